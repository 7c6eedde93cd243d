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

#ifndef IEVM_CORE_HPP_
#define IEVM_CORE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ievm {

// A point in feature space. Dimension is fixed for the lifetime of a model.
using FeatureVector = std::vector<double>;

// Label reserved for rejected queries and for true unknowns in evaluation.
inline constexpr std::string_view kUnknownLabel = "unknown";

struct LabeledSample {
  FeatureVector features;
  std::string label;

  friend bool operator==(const LabeledSample&, const LabeledSample&) = default;
};

enum class DistanceMetric { kEuclidean, kCosine };

std::string to_string(DistanceMetric metric);
DistanceMetric parse_metric(std::string_view name);

// Weibull parameters of one extreme vector. max_tail_distance is the raw
// (unscaled) radius of the hypersphere that gates incremental updates.
struct WeibullParams {
  double shape = 1.0;
  double scale = 1.0;
  double max_tail_distance = 0.0;

  friend bool operator==(const WeibullParams&, const WeibullParams&) = default;
};

// Instrumentation for the efficiency measurements. All fields are cumulative.
struct Counters {
  std::uint64_t weibull_refits = 0;
  std::uint64_t distance_evals = 0;
  std::uint64_t greedy_selections = 0;
  std::uint64_t bisection_iterations = 0;
  std::uint64_t set_cover_runs = 0;
  std::uint64_t evs_updated = 0;
  std::uint64_t evs_skipped = 0;
  std::uint64_t evs_added = 0;

  Counters& operator+=(const Counters& other);
  friend bool operator==(const Counters&, const Counters&) = default;
};

// Throws std::invalid_argument on dimension mismatch, or a zero-norm input
// for the cosine metric.
double distance(std::span<const double> a, std::span<const double> b,
                DistanceMetric metric);

// Inclusion probability exp(-(d / scale)^shape).
double psi(const WeibullParams& params, double d);

struct WeibullFitOptions {
  double min_shape = 1e-3;
  double max_shape = 1e4;
  double min_value = 1e-12;
  int max_iterations = 100;
  double tolerance = 1e-9;
};

struct WeibullShapeScale {
  double shape = 1.0;
  double scale = 1.0;
};

// Maximum-likelihood Weibull fit. The shape solves the profile likelihood
// equation by safeguarded Newton iteration; the scale follows in closed form.
// Values below min_value are clamped to it. An all-equal tail returns
// (max_shape, value). Negative or non-finite entries throw.
WeibullShapeScale fit_weibull(std::span<const double> tail,
                              const WeibullFitOptions& options = {});

double weibull_log_likelihood(std::span<const double> values, double shape,
                              double scale);

void check_finite(std::span<const double> values, std::string_view what);

}  // namespace ievm

#endif  // IEVM_CORE_HPP_
