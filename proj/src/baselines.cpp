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

#include "ievm/baselines.hpp"

#include <limits>
#include <set>
#include <stdexcept>

#include "ievm/fitting.hpp"

namespace ievm {

std::size_t NNStore::class_count() const {
  std::set<std::string_view> labels;
  for (const auto& s : samples) labels.insert(s.label);
  return labels.size();
}

namespace {

struct Neighbor {
  std::size_t index = 0;
  double distance = std::numeric_limits<double>::infinity();
};

Neighbor nearest(const NNStore& store, std::span<const double> x) {
  Neighbor best;
  for (std::size_t i = 0; i < store.samples.size(); ++i) {
    const double d = distance(store.samples[i].features, x, store.metric);
    if (d < best.distance) best = {i, d};
  }
  return best;
}

}  // namespace

Prediction osnn_predict(const NNStore& store, std::span<const double> x,
                        double ratio_threshold) {
  if (!(ratio_threshold > 0.0 && ratio_threshold <= 1.0)) {
    throw std::invalid_argument("osnn: ratio threshold must lie in (0, 1]");
  }
  if (store.class_count() < 2) {
    throw std::invalid_argument("osnn requires at least two classes");
  }
  const Neighbor first = nearest(store, x);
  const std::string& winner = store.samples[first.index].label;
  double second = std::numeric_limits<double>::infinity();
  for (const auto& s : store.samples) {
    if (s.label == winner) continue;
    second = std::min(second, distance(s.features, x, store.metric));
  }
  const double ratio = second > 0.0 ? first.distance / second : 1.0;
  const double score = 1.0 - ratio;
  Prediction out{std::string(kUnknownLabel), score, {{winner, score}}};
  if (ratio <= ratio_threshold) out.label = winner;
  return out;
}

Prediction tnn_predict(const NNStore& store, std::span<const double> x,
                       double distance_threshold) {
  Prediction out{std::string(kUnknownLabel), 0.0, {}};
  if (store.samples.empty()) return out;
  const Neighbor best = nearest(store, x);
  const std::string& winner = store.samples[best.index].label;
  out.score = 1.0 / (1.0 + best.distance);
  out.per_class_scores.emplace(winner, out.score);
  if (best.distance <= distance_threshold) out.label = winner;
  return out;
}

NNStore nn_partial_fit(NNStore store, std::span<const LabeledSample> batch) {
  const std::size_t dim =
      store.samples.empty() ? 0 : store.samples.front().features.size();
  validate_samples(batch, dim);
  store.samples.insert(store.samples.end(), batch.begin(), batch.end());
  return store;
}

}  // namespace ievm
