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

#include "ievm/predict.hpp"

#include <algorithm>
#include <stdexcept>

namespace ievm {

namespace {

double class_score(const ClassModel& cls, std::span<const double> x,
                   DistanceMetric metric) {
  double best = 0.0;
  for (const auto& ev : cls.evs) best = std::max(best, coverage(ev, x, metric));
  return best;
}

void check_query(const EVMModel& model, std::span<const double> x) {
  if (model.dimension != 0 && x.size() != model.dimension) {
    throw std::invalid_argument("query dimension " + std::to_string(x.size()) +
                                " does not match model dimension " +
                                std::to_string(model.dimension));
  }
}

}  // namespace

Prediction predict(const EVMModel& model, std::span<const double> x,
                   double delta) {
  Prediction out{std::string(kUnknownLabel), 0.0, {}};
  if (model.empty()) return out;
  check_query(model, x);

  std::string best_label;
  double best = -1.0;
  for (const auto& [label, cls] : model.classes) {
    if (cls.evs.empty()) continue;
    const double score = class_score(cls, x, model.config.metric);
    out.per_class_scores.emplace(label, score);
    if (score > best) {
      best = score;
      best_label = label;
    }
  }
  out.score = best;
  if (best >= delta) out.label = best_label;
  return out;
}

ScoreMatrix score_matrix(const EVMModel& model,
                         std::span<const FeatureVector> queries) {
  ScoreMatrix out;
  for (const auto& [label, cls] : model.classes) {
    if (!cls.evs.empty()) out.classes.push_back(label);
  }
  out.scores.reserve(queries.size());
  for (const auto& q : queries) {
    check_query(model, q);
    std::vector<double> row;
    row.reserve(out.classes.size());
    for (const auto& label : out.classes) {
      row.push_back(class_score(model.classes.at(label), q, model.config.metric));
    }
    out.scores.push_back(std::move(row));
  }
  return out;
}

}  // namespace ievm
