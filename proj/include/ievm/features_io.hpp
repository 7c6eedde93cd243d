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

#ifndef IEVM_FEATURES_IO_HPP_
#define IEVM_FEATURES_IO_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ievm/core.hpp"

namespace ievm {

// csv:    header "label,f0,f1,...", one sample per row.
// binary: "EVMF", version byte, u32 dimension, u64 count, then per record a
//         u32-length-prefixed UTF-8 label and `dimension` float32 values.
//         All integers and floats little-endian.
enum class FeatureFormat { kCsv, kBinary };

inline constexpr std::uint8_t kFeatureFormatVersion = 1;

FeatureFormat parse_feature_format(std::string_view name);
// ".csv" -> csv, anything else -> binary.
FeatureFormat feature_format_for_path(std::string_view path);

std::vector<LabeledSample> parse_features_csv(std::string_view text);
std::string format_features_csv(const std::vector<LabeledSample>& samples);
std::vector<LabeledSample> parse_features_binary(std::string_view bytes);
std::string format_features_binary(const std::vector<LabeledSample>& samples);

std::vector<LabeledSample> load_features(const std::string& path,
                                         FeatureFormat format);
void save_features(const std::vector<LabeledSample>& samples,
                   const std::string& path, FeatureFormat format);

}  // namespace ievm

#endif  // IEVM_FEATURES_IO_HPP_
