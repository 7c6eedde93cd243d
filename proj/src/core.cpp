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

#include "ievm/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ievm {

std::string to_string(DistanceMetric metric) {
  switch (metric) {
    case DistanceMetric::kEuclidean:
      return "euclidean";
    case DistanceMetric::kCosine:
      return "cosine";
  }
  return "euclidean";
}

DistanceMetric parse_metric(std::string_view name) {
  if (name == "euclidean") return DistanceMetric::kEuclidean;
  if (name == "cosine" || name == "cosine-distance") {
    return DistanceMetric::kCosine;
  }
  throw std::invalid_argument("unknown distance metric '" + std::string(name) +
                              "'");
}

Counters& Counters::operator+=(const Counters& other) {
  weibull_refits += other.weibull_refits;
  distance_evals += other.distance_evals;
  greedy_selections += other.greedy_selections;
  bisection_iterations += other.bisection_iterations;
  set_cover_runs += other.set_cover_runs;
  evs_updated += other.evs_updated;
  evs_skipped += other.evs_skipped;
  evs_added += other.evs_added;
  return *this;
}

void check_finite(std::span<const double> values, std::string_view what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(std::string(what) +
                                  " contains a non-finite value");
    }
  }
}

double distance(std::span<const double> a, std::span<const double> b,
                DistanceMetric metric) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("distance: dimension mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  switch (metric) {
    case DistanceMetric::kEuclidean: {
      double sum = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        sum += diff * diff;
      }
      return std::sqrt(sum);
    }
    case DistanceMetric::kCosine: {
      double dot = 0.0;
      double norm_a = 0.0;
      double norm_b = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        norm_a += a[i] * a[i];
        norm_b += b[i] * b[i];
      }
      if (norm_a == 0.0 || norm_b == 0.0) {
        throw std::invalid_argument("cosine distance of a zero-norm vector");
      }
      const double cosine = dot / (std::sqrt(norm_a) * std::sqrt(norm_b));
      return std::clamp(1.0 - cosine, 0.0, 2.0);
    }
  }
  return 0.0;
}

double psi(const WeibullParams& params, double d) {
  return std::exp(-std::pow(d / params.scale, params.shape));
}

double weibull_log_likelihood(std::span<const double> values, double shape,
                              double scale) {
  const double n = static_cast<double>(values.size());
  double sum_log = 0.0;
  double sum_pow = 0.0;
  for (double x : values) {
    sum_log += std::log(x);
    sum_pow += std::pow(x / scale, shape);
  }
  return n * std::log(shape) - n * shape * std::log(scale) +
         (shape - 1.0) * sum_log - sum_pow;
}

namespace {

// Profile score for the shape on data normalized to max 1:
//   g(k) = S1/S0 - 1/k - mean(log y),  g'(k) = (S2 S0 - S1^2)/S0^2 + 1/k^2
// g is strictly increasing, so the root is unique.
struct ShapeScore {
  double value;
  double slope;
  double sum_pow;
};

ShapeScore shape_score(std::span<const double> log_y, double mean_log,
                       double k) {
  double s0 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  for (double ly : log_y) {
    const double w = std::exp(k * ly);
    s0 += w;
    s1 += w * ly;
    s2 += w * ly * ly;
  }
  const double ratio = s1 / s0;
  return {ratio - 1.0 / k - mean_log,
          (s2 / s0 - ratio * ratio) + 1.0 / (k * k), s0};
}

}  // namespace

WeibullShapeScale fit_weibull(std::span<const double> tail,
                              const WeibullFitOptions& options) {
  if (tail.empty()) throw std::invalid_argument("fit_weibull: empty tail");
  std::vector<double> values(tail.begin(), tail.end());
  for (double& v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw std::invalid_argument(
          "fit_weibull: tail entries must be finite and non-negative");
    }
    v = std::max(v, options.min_value);
  }

  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double max_value = *max_it;
  if (*min_it == max_value) return {options.max_shape, max_value};

  const std::size_t n = values.size();
  std::vector<double> log_y(n);
  for (std::size_t i = 0; i < n; ++i) log_y[i] = std::log(values[i] / max_value);
  const double mean_log =
      std::accumulate(log_y.begin(), log_y.end(), 0.0) / static_cast<double>(n);

  auto scale_for = [&](double k, double sum_pow) {
    return max_value * std::pow(sum_pow / static_cast<double>(n), 1.0 / k);
  };

  double lo = options.min_shape;
  double hi = options.max_shape;
  const ShapeScore at_hi = shape_score(log_y, mean_log, hi);
  if (at_hi.value <= 0.0) return {hi, scale_for(hi, at_hi.sum_pow)};
  const ShapeScore at_lo = shape_score(log_y, mean_log, lo);
  if (at_lo.value >= 0.0) return {lo, scale_for(lo, at_lo.sum_pow)};

  // Method-of-moments start: k ~ cv^-1.086.
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  double k = std::pow(std::sqrt(var) / mean, -1.086);
  if (!std::isfinite(k) || k <= lo || k >= hi) k = std::sqrt(lo * hi);

  ShapeScore score = shape_score(log_y, mean_log, k);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (score.value == 0.0) break;
    if (score.value < 0.0) {
      lo = k;
    } else {
      hi = k;
    }
    double next = k - score.value / score.slope;
    if (!(next > lo && next < hi)) next = std::sqrt(lo * hi);
    const double step = std::abs(next - k);
    k = next;
    score = shape_score(log_y, mean_log, k);
    if (step < options.tolerance) break;
  }
  return {k, scale_for(k, score.sum_pow)};
}

}  // namespace ievm
