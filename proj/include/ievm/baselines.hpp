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

#ifndef IEVM_BASELINES_HPP_
#define IEVM_BASELINES_HPP_

#include <span>
#include <vector>

#include "ievm/core.hpp"
#include "ievm/predict.hpp"

namespace ievm {

// Sample store for the nearest-neighbor baselines. Exact linear scan.
struct NNStore {
  std::vector<LabeledSample> samples;
  DistanceMetric metric = DistanceMetric::kEuclidean;

  std::size_t class_count() const;
};

// Open-set NN with the distance-ratio rule: d1 is the distance to the nearest
// sample (class c1), d2 the distance to the nearest sample of any other class.
// Returns c1 if d1 / d2 <= ratio_threshold. Score is 1 - d1 / d2.
Prediction osnn_predict(const NNStore& store, std::span<const double> x,
                        double ratio_threshold);

// Thresholded 1-NN. Score is 1 / (1 + d).
Prediction tnn_predict(const NNStore& store, std::span<const double> x,
                       double distance_threshold);

NNStore nn_partial_fit(NNStore store, std::span<const LabeledSample> batch);

}  // namespace ievm

#endif  // IEVM_BASELINES_HPP_
