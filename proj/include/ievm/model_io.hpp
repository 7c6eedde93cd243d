// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IEVM_MODEL_IO_HPP_
#define IEVM_MODEL_IO_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "ievm/fitting.hpp"

namespace ievm {

inline constexpr std::uint32_t kModelFormatVersion = 1;

// Binary model format ("IEVM", version, config, classes, FNV-1a checksum).
// Doubles are stored as raw 64-bit patterns so a round trip is bit-exact.
std::string serialize_model(const EVMModel& model);
EVMModel deserialize_model(std::string_view bytes);

void save_model(const EVMModel& model, const std::string& path);
EVMModel load_model(const std::string& path);

}  // namespace ievm

#endif  // IEVM_MODEL_IO_HPP_
