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

#ifndef IEVM_PREDICT_HPP_
#define IEVM_PREDICT_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ievm/core.hpp"
#include "ievm/fitting.hpp"

namespace ievm {

struct Prediction {
  std::string label;  // class or kUnknownLabel
  double score = 0.0;
  std::map<std::string, double> per_class_scores;

  bool is_unknown() const { return label == kUnknownLabel; }
};

// Per-class maximum inclusion probability; the best class wins if its score
// reaches delta, otherwise the query is "unknown". Score ties go to the
// lexicographically smallest class. An empty model yields ("unknown", 0).
Prediction predict(const EVMModel& model, std::span<const double> x,
                   double delta);

struct ScoreMatrix {
  std::vector<std::string> classes;        // column order
  std::vector<std::vector<double>> scores;  // [query][class]
};

ScoreMatrix score_matrix(const EVMModel& model,
                         std::span<const FeatureVector> queries);

}  // namespace ievm

#endif  // IEVM_PREDICT_HPP_
