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

#include "ievm/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ievm {

void EVMConfig::validate() const {
  if (tail_size < 1) throw std::invalid_argument("tail_size must be >= 1");
  if (!(distance_multiplier > 0.0 && distance_multiplier <= 1.0)) {
    throw std::invalid_argument("distance_multiplier must lie in (0, 1]");
  }
  if (budget && *budget < 1) throw std::invalid_argument("budget must be >= 1");
  if (!(rejection_threshold > 0.0 && rejection_threshold < 1.0)) {
    throw std::invalid_argument("rejection_threshold must lie in (0, 1)");
  }
  if (!(coverage_threshold > 0.0 && coverage_threshold < 1.0)) {
    throw std::invalid_argument("coverage_threshold must lie in (0, 1)");
  }
  if (!(bisection_tolerance > 0.0)) {
    throw std::invalid_argument("bisection_tolerance must be positive");
  }
  if (!(shape_cap > 1e-3)) throw std::invalid_argument("shape_cap too small");
}

WeibullFitOptions EVMConfig::fit_options() const {
  WeibullFitOptions options;
  options.max_shape = shape_cap;
  return options;
}

std::size_t EVMModel::size() const {
  std::size_t total = 0;
  for (const auto& [label, cls] : classes) total += cls.evs.size();
  return total;
}

double coverage(const ExtremeVector& ev, std::span<const double> x,
                DistanceMetric metric) {
  return psi(ev.params, distance(ev.anchor, x, metric));
}

std::vector<double> compute_coverage_sums(std::span<const ExtremeVector> evs,
                                          DistanceMetric metric,
                                          Counters* counters) {
  std::vector<double> sums(evs.size(), 0.0);
  for (std::size_t i = 0; i < evs.size(); ++i) {
    for (std::size_t j = 0; j < evs.size(); ++j) {
      if (i != j) sums[i] += coverage(evs[i], evs[j].anchor, metric);
    }
  }
  if (counters && evs.size() > 1) {
    counters->distance_evals += evs.size() * (evs.size() - 1);
  }
  return sums;
}

std::size_t validate_samples(std::span<const LabeledSample> samples,
                             std::size_t expected) {
  std::size_t dimension = expected;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (s.label.empty()) {
      throw std::invalid_argument("sample " + std::to_string(i) +
                                  " has an empty label");
    }
    if (s.label == kUnknownLabel) {
      throw std::invalid_argument("sample " + std::to_string(i) +
                                  " uses the reserved label 'unknown'");
    }
    if (s.features.empty()) {
      throw std::invalid_argument("sample " + std::to_string(i) +
                                  " has no features");
    }
    if (dimension == 0) dimension = s.features.size();
    if (s.features.size() != dimension) {
      throw std::invalid_argument(
          "sample " + std::to_string(i) + " has dimension " +
          std::to_string(s.features.size()) + ", expected " +
          std::to_string(dimension));
    }
    check_finite(s.features, "sample " + std::to_string(i));
  }
  return dimension;
}

namespace {

// Keeps the `limit` smallest values, sorted ascending.
void keep_smallest(std::vector<double>& values, std::size_t limit) {
  if (values.size() > limit) {
    std::nth_element(values.begin(), values.begin() + static_cast<long>(limit),
                     values.end());
    values.resize(limit);
  }
  std::sort(values.begin(), values.end());
}

void refit(ExtremeVector& ev, const EVMConfig& config) {
  std::vector<double> scaled(ev.tail.size());
  std::transform(ev.tail.begin(), ev.tail.end(), scaled.begin(),
                 [&](double d) { return d * config.distance_multiplier; });
  const auto fit = fit_weibull(scaled, config.fit_options());
  ev.params = {fit.shape, fit.scale, ev.tail.back()};
}

}  // namespace

ExtremeVector fit_from_distances(FeatureVector anchor, std::string label,
                                 std::vector<double> negative_distances,
                                 const EVMConfig& config) {
  if (negative_distances.empty()) {
    throw std::invalid_argument("cannot fit extreme vector for class '" +
                                label + "' without negatives");
  }
  ExtremeVector ev{std::move(anchor), std::move(label), {},
                   std::move(negative_distances)};
  keep_smallest(ev.tail, config.tail_size);
  refit(ev, config);
  return ev;
}

ExtremeVector fit_anchor(const LabeledSample& sample,
                         std::span<const LabeledSample> negatives,
                         const EVMConfig& config) {
  std::vector<double> distances;
  distances.reserve(negatives.size());
  for (const auto& neg : negatives) {
    if (neg.label == sample.label) {
      throw std::invalid_argument("negative shares the anchor's label '" +
                                  sample.label + "'");
    }
    distances.push_back(distance(sample.features, neg.features, config.metric));
  }
  return fit_from_distances(sample.features, sample.label, std::move(distances),
                            config);
}

EVMModel batch_fit(std::span<const LabeledSample> data, const EVMConfig& config,
                   Counters* counters) {
  config.validate();
  EVMModel model;
  model.config = config;
  model.dimension = validate_samples(data);

  std::set<std::string> labels;
  for (const auto& s : data) labels.insert(s.label);
  if (labels.size() < 2) {
    throw std::invalid_argument("batch_fit requires at least two classes");
  }

  std::vector<double> distances;
  for (const auto& sample : data) {
    distances.clear();
    for (const auto& other : data) {
      if (other.label != sample.label) {
        distances.push_back(
            distance(sample.features, other.features, config.metric));
      }
    }
    if (counters) {
      counters->distance_evals += distances.size();
      counters->weibull_refits += 1;
      counters->evs_added += 1;
    }
    model.classes[sample.label].evs.push_back(
        fit_from_distances(sample.features, sample.label, distances, config));
  }
  for (auto& [label, cls] : model.classes) {
    cls.coverage_sums = compute_coverage_sums(cls.evs, config.metric, counters);
  }
  return model;
}

bool requires_update(const ExtremeVector& ev,
                     std::span<const LabeledSample> batch,
                     const EVMConfig& config) {
  const bool saturated = ev.tail.size() >= config.tail_size;
  for (const auto& s : batch) {
    if (s.label == ev.label) continue;
    if (!saturated) return true;
    if (distance(ev.anchor, s.features, config.metric) <
        ev.params.max_tail_distance) {
      return true;
    }
  }
  return false;
}

double update_ratio(const EVMModel& model,
                    std::span<const LabeledSample> batch) {
  const std::size_t total = model.size();
  if (total == 0) throw std::invalid_argument("update_ratio: empty model");
  validate_samples(batch, model.dimension);
  std::size_t flagged = 0;
  for (const auto& [label, cls] : model.classes) {
    for (const auto& ev : cls.evs) {
      if (requires_update(ev, batch, model.config)) ++flagged;
    }
  }
  return static_cast<double>(flagged) / static_cast<double>(total);
}

EVMModel partial_fit(EVMModel model, std::span<const LabeledSample> batch,
                     Counters* counters) {
  const EVMConfig& config = model.config;
  config.validate();
  model.dimension = validate_samples(batch, model.dimension);

  std::set<std::string> labels;
  for (const auto& [label, cls] : model.classes) {
    if (!cls.evs.empty()) labels.insert(label);
  }
  for (const auto& s : batch) labels.insert(s.label);
  if (labels.size() < 2) {
    throw std::invalid_argument("partial_fit requires at least two classes");
  }

  Counters local;
  const std::size_t tail_size = config.tail_size;

  // Existing extreme vectors: insert qualifying new negatives and refit the
  // ones whose sphere was entered.
  std::map<std::string, std::vector<bool>> updated;
  std::vector<double> inserted;
  for (auto& [label, cls] : model.classes) {
    auto& flags = updated[label];
    flags.assign(cls.evs.size(), false);
    for (std::size_t e = 0; e < cls.evs.size(); ++e) {
      ExtremeVector& ev = cls.evs[e];
      const bool saturated = ev.tail.size() >= tail_size;
      inserted.clear();
      for (const auto& s : batch) {
        if (s.label == ev.label) continue;
        const double d = distance(ev.anchor, s.features, config.metric);
        ++local.distance_evals;
        if (!saturated || d < ev.params.max_tail_distance) inserted.push_back(d);
      }
      if (inserted.empty()) {
        ++local.evs_skipped;
        continue;
      }
      ev.tail.insert(ev.tail.end(), inserted.begin(), inserted.end());
      keep_smallest(ev.tail, tail_size);
      refit(ev, config);
      flags[e] = true;
      ++local.evs_updated;
      ++local.weibull_refits;
    }
  }

  // New extreme vectors against existing anchors and the batch.
  std::map<std::string, std::vector<ExtremeVector>> fresh;
  std::vector<double> distances;
  for (const auto& sample : batch) {
    distances.clear();
    for (const auto& [label, cls] : model.classes) {
      if (label == sample.label) continue;
      for (std::size_t e = 0; e < cls.evs.size(); ++e) {
        distances.push_back(
            distance(sample.features, cls.evs[e].anchor, config.metric));
      }
    }
    for (const auto& other : batch) {
      if (other.label != sample.label) {
        distances.push_back(
            distance(sample.features, other.features, config.metric));
      }
    }
    local.distance_evals += distances.size();
    ++local.weibull_refits;
    ++local.evs_added;
    fresh[sample.label].push_back(
        fit_from_distances(sample.features, sample.label, distances, config));
  }

  // Coverage sums: refresh refit extreme vectors, add the new samples'
  // contributions to the old ones, then compute sums for the new ones.
  for (auto& [label, additions] : fresh) {
    model.classes[label];  // new classes
  }
  for (auto& [label, cls] : model.classes) {
    const auto& flags = updated[label];
    const std::size_t old_count = cls.evs.size();
    cls.coverage_sums.resize(old_count, 0.0);
    for (std::size_t e = 0; e < old_count; ++e) {
      if (e < flags.size() && flags[e]) {
        double sum = 0.0;
        for (std::size_t j = 0; j < old_count; ++j) {
          if (j != e) sum += coverage(cls.evs[e], cls.evs[j].anchor, config.metric);
        }
        local.distance_evals += old_count - 1;
        cls.coverage_sums[e] = sum;
      }
    }
    auto it = fresh.find(label);
    if (it == fresh.end()) continue;
    auto& additions = it->second;
    for (std::size_t e = 0; e < old_count; ++e) {
      for (const auto& n : additions) {
        cls.coverage_sums[e] += coverage(cls.evs[e], n.anchor, config.metric);
      }
    }
    local.distance_evals += old_count * additions.size();
    for (auto& n : additions) cls.evs.push_back(std::move(n));
    const std::size_t total = cls.evs.size();
    for (std::size_t i = old_count; i < total; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < total; ++j) {
        if (j != i) sum += coverage(cls.evs[i], cls.evs[j].anchor, config.metric);
      }
      local.distance_evals += total - 1;
      cls.coverage_sums.push_back(sum);
    }
  }

  ++model.epoch;
  if (counters) *counters += local;
  return model;
}

}  // namespace ievm
