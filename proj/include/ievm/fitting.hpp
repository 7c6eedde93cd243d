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

#ifndef IEVM_FITTING_HPP_
#define IEVM_FITTING_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ievm/core.hpp"

namespace ievm {

// An anchor with its Weibull model. `tail` holds the raw negative distances
// (before the distance multiplier), sorted ascending, at most tail_size long.
struct ExtremeVector {
  FeatureVector anchor;
  std::string label;
  WeibullParams params;
  std::vector<double> tail;

  friend bool operator==(const ExtremeVector&, const ExtremeVector&) = default;
};

struct EVMConfig {
  std::size_t tail_size = 75;
  double distance_multiplier = 0.5;
  DistanceMetric metric = DistanceMetric::kEuclidean;
  std::optional<std::size_t> budget;  // unset = unlimited
  double rejection_threshold = 0.5;
  double coverage_threshold = 0.5;
  double bisection_tolerance = 1e-3;
  double shape_cap = 1e4;

  // Throws std::invalid_argument if any field is out of range.
  void validate() const;

  WeibullFitOptions fit_options() const;

  friend bool operator==(const EVMConfig&, const EVMConfig&) = default;
};

// The extreme vectors of one class plus the cached coverage sums used by the
// budgeted reduction: coverage_sums[i] = sum over j != i of psi_i(x_j).
struct ClassModel {
  std::vector<ExtremeVector> evs;
  std::vector<double> coverage_sums;

  friend bool operator==(const ClassModel&, const ClassModel&) = default;
};

struct EVMModel {
  EVMConfig config;
  std::size_t dimension = 0;
  std::uint64_t epoch = 0;
  std::map<std::string, ClassModel> classes;

  std::size_t size() const;
  bool empty() const { return size() == 0; }

  friend bool operator==(const EVMModel&, const EVMModel&) = default;
};

// Coverage of x by an extreme vector: psi_ev(x).
double coverage(const ExtremeVector& ev, std::span<const double> x,
                DistanceMetric metric);

// From-scratch coverage sums over a class's extreme vectors.
std::vector<double> compute_coverage_sums(std::span<const ExtremeVector> evs,
                                          DistanceMetric metric,
                                          Counters* counters = nullptr);

// Builds an extreme vector from its raw negative distances.
ExtremeVector fit_from_distances(FeatureVector anchor, std::string label,
                                 std::vector<double> negative_distances,
                                 const EVMConfig& config);

ExtremeVector fit_anchor(const LabeledSample& sample,
                         std::span<const LabeledSample> negatives,
                         const EVMConfig& config);

// One extreme vector per sample. Requires at least two classes.
EVMModel batch_fit(std::span<const LabeledSample> data, const EVMConfig& config,
                   Counters* counters = nullptr);

// Incorporates a batch: existing extreme vectors are refit only when a new
// negative falls strictly inside their max-tail-distance sphere (or their
// tail is not yet full). Every batch sample becomes a new extreme vector.
// Coverage sums are kept consistent with the current parameters.
EVMModel partial_fit(EVMModel model, std::span<const LabeledSample> batch,
                     Counters* counters = nullptr);

// True if the extreme vector would be refit by the given batch.
bool requires_update(const ExtremeVector& ev,
                     std::span<const LabeledSample> batch,
                     const EVMConfig& config);

// Fraction of extreme vectors that partial_fit would refit. Read-only.
double update_ratio(const EVMModel& model, std::span<const LabeledSample> batch);

// Validates labels, finiteness and a common dimension; returns the dimension
// (or `expected` for an empty batch).
std::size_t validate_samples(std::span<const LabeledSample> samples,
                             std::size_t expected = 0);

}  // namespace ievm

#endif  // IEVM_FITTING_HPP_
