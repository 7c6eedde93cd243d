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

#ifndef IEVM_TESTS_ORACLES_HPP_
#define IEVM_TESTS_ORACLES_HPP_

// Independent reference implementations used only by the tests. None of these
// call into the code paths they check beyond distance() and psi().

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "ievm/core.hpp"
#include "ievm/fitting.hpp"

namespace ievm::oracle {

struct GridFit {
  double shape = 0.0;
  double scale = 0.0;
  double log_likelihood = -std::numeric_limits<double>::infinity();
  double log_step = 0.0;  // final grid spacing in log-parameter space
};

inline double log_likelihood(const std::vector<double>& x, double k, double lam) {
  double ll = 0.0;
  for (double v : x) {
    const double z = v / lam;
    ll += std::log(k / lam) + (k - 1.0) * std::log(z) - std::pow(z, k);
  }
  return ll;
}

// Dense log-spaced grid over (shape, scale) in [lo, hi]^2, refined around the
// best cell a fixed number of times.
inline GridFit weibull_grid(const std::vector<double>& x, double lo = 0.05,
                            double hi = 50.0, int points = 81, int refinements = 12) {
  double k_lo = std::log(lo), k_hi = std::log(hi);
  double l_lo = std::log(lo), l_hi = std::log(hi);
  GridFit best;
  for (int round = 0; round <= refinements; ++round) {
    const double dk = (k_hi - k_lo) / (points - 1);
    const double dl = (l_hi - l_lo) / (points - 1);
    for (int i = 0; i < points; ++i) {
      for (int j = 0; j < points; ++j) {
        const double k = std::exp(k_lo + i * dk);
        const double lam = std::exp(l_lo + j * dl);
        const double ll = log_likelihood(x, k, lam);
        if (ll > best.log_likelihood) best = {k, lam, ll, std::max(dk, dl)};
      }
    }
    const double ck = std::log(best.shape), cl = std::log(best.scale);
    k_lo = std::max(std::log(lo), ck - 4 * dk);
    k_hi = std::min(std::log(hi), ck + 4 * dk);
    l_lo = std::max(std::log(lo), cl - 4 * dl);
    l_hi = std::min(std::log(hi), cl + 4 * dl);
  }
  return best;
}

inline double cov(const ExtremeVector& from, const ExtremeVector& to,
                  DistanceMetric metric) {
  return psi(from.params, distance(from.anchor, to.anchor, metric));
}

// Greedy with all sums recomputed from scratch over the remaining candidates
// every round. Sums within 1e-12 (relative to the largest initial sum) of the
// round's maximum are ties, and the lowest index wins them.
inline std::vector<std::size_t> naive_wksc(const std::vector<ExtremeVector>& c,
                                           std::size_t budget, DistanceMetric metric) {
  std::vector<std::size_t> remaining(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) remaining[i] = i;
  std::vector<std::size_t> picked;
  double margin = -1.0;
  while (picked.size() < budget && !remaining.empty()) {
    std::vector<double> sums(remaining.size(), 0.0);
    for (std::size_t a = 0; a < remaining.size(); ++a) {
      for (std::size_t b = 0; b < remaining.size(); ++b) {
        if (a != b) sums[a] += cov(c[remaining[a]], c[remaining[b]], metric);
      }
    }
    const double top = *std::max_element(sums.begin(), sums.end());
    if (margin < 0.0) margin = 1e-12 * std::max(1.0, top);
    std::size_t best_pos = 0;
    while (sums[best_pos] < top - margin) ++best_pos;
    picked.push_back(remaining[best_pos]);
    remaining.erase(remaining.begin() + static_cast<long>(best_pos));
  }
  return picked;
}

// Integer program objective for a fixed set of kept candidates: each unordered
// pair contributes at most one directed coverage, and only from a kept set.
inline double wksc_objective(const std::vector<ExtremeVector>& c,
                             const std::vector<std::size_t>& kept,
                             DistanceMetric metric) {
  std::vector<bool> in(c.size(), false);
  for (auto k : kept) in[k] = true;
  double total = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      double best = 0.0;
      if (in[i]) best = std::max(best, cov(c[i], c[j], metric));
      if (in[j]) best = std::max(best, cov(c[j], c[i], metric));
      total += best;
    }
  }
  return total;
}

// Exhaustive optimum over all subsets of size 1..budget.
inline double wksc_optimum(const std::vector<ExtremeVector>& c, std::size_t budget,
                           DistanceMetric metric) {
  const std::size_t n = c.size();
  double best = 0.0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) > budget) continue;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) kept.push_back(i);
    }
    best = std::max(best, wksc_objective(c, kept, metric));
  }
  return best;
}

// Smallest subset that covers every candidate at threshold zeta.
inline std::size_t exact_set_cover_size(const std::vector<ExtremeVector>& c, double zeta,
                                        DistanceMetric metric) {
  const std::size_t n = c.size();
  std::size_t best = n;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size >= best) continue;
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      bool covered = false;
      for (std::size_t i = 0; i < n && !covered; ++i) {
        if ((mask & (1u << i)) && (i == j || cov(c[i], c[j], metric) >= zeta)) {
          covered = true;
        }
      }
      ok = covered;
    }
    if (ok) best = size;
  }
  return best;
}

// A class of `n` random points in the plane fitted against `negatives` random
// points of another class.
inline std::vector<ExtremeVector> random_class(std::mt19937_64& rng, std::size_t n,
                                               std::size_t negatives,
                                               const EVMConfig& config) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<LabeledSample> neg;
  for (std::size_t i = 0; i < negatives; ++i) {
    neg.push_back({{4.0 + normal(rng), normal(rng)}, "neg"});
  }
  std::vector<ExtremeVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    LabeledSample s{{1.5 * normal(rng), 1.5 * normal(rng)}, "pos"};
    out.push_back(fit_anchor(s, neg, config));
  }
  return out;
}

}  // namespace ievm::oracle

#endif  // IEVM_TESTS_ORACLES_HPP_
