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

#ifndef IEVM_SYNTH_HPP_
#define IEVM_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ievm/core.hpp"

namespace ievm {

struct BlobSet {
  std::vector<FeatureVector> means;
  std::vector<LabeledSample> samples;  // class-major
};

// Isotropic Gaussian blobs. Class means are drawn from a standard normal and
// rescaled so the closest pair sits min_separation * spread apart. Labels are
// "c0", "c1", ... zero-padded to a common width.
BlobSet generate_blobs(std::size_t n_classes, std::size_t per_class,
                       std::size_t dimension, double spread, std::uint64_t seed,
                       double min_separation = 6.0);

std::vector<LabeledSample> synth_blobs(std::size_t n_classes,
                                       std::size_t per_class,
                                       std::size_t dimension, double spread,
                                       std::uint64_t seed);

std::string blob_label(std::size_t index, std::size_t n_classes);

}  // namespace ievm

#endif  // IEVM_SYNTH_HPP_
