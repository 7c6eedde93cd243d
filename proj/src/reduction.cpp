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

#include "ievm/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

namespace ievm {

WkscResult reduce_wksc(std::span<const ExtremeVector> candidates,
                       std::span<const double> sums, std::size_t budget,
                       DistanceMetric metric, Counters* counters,
                       const WkscOptions& options) {
  if (budget < 1) throw std::invalid_argument("reduce_wksc: budget must be >= 1");
  const std::size_t n = candidates.size();
  if (sums.size() != n) {
    throw std::invalid_argument("reduce_wksc: cache not aligned with candidates");
  }

  std::vector<double> p(sums.begin(), sums.end());
  std::vector<bool> remaining(n, true);
  WkscResult result;
  const std::size_t rounds = std::min(budget, n);
  result.selected.reserve(rounds);
  Counters local;

  // Subtraction leaves rounding residue where the exact sum is zero or tied,
  // so sums within this margin of the maximum count as ties.
  double magnitude = 1.0;
  for (double s : sums) magnitude = std::max(magnitude, std::abs(s));
  const double tie_margin = 1e-12 * magnitude;

  for (std::size_t round = 0; round < rounds; ++round) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (remaining[i]) top = std::max(top, p[i]);
    }
    std::size_t best = n;
    for (std::size_t i = 0; i < n && best == n; ++i) {
      if (remaining[i] && p[i] >= top - tie_margin) best = i;
    }
    result.selected.push_back(best);
    remaining[best] = false;
    ++local.greedy_selections;
    // Bilateral coverage regularization.
    for (std::size_t i = 0; i < n; ++i) {
      if (!remaining[i]) continue;
      p[i] -= coverage(candidates[i], candidates[best].anchor, metric);
      ++local.distance_evals;
    }
  }

  result.kept.reserve(rounds);
  for (std::size_t idx : result.selected) result.kept.push_back(candidates[idx]);

  const std::size_t kept = rounds;
  auto from_scratch = [&] {
    return compute_coverage_sums(result.kept, metric, &local);
  };
  // Start from the pre-greedy sums and drop the contributions of every
  // candidate that was not kept.
  auto by_subtraction = [&] {
    std::vector<double> out(kept);
    for (std::size_t k = 0; k < kept; ++k) {
      const std::size_t s = result.selected[k];
      double sum = sums[s];
      for (std::size_t j = 0; j < n; ++j) {
        if (remaining[j]) {
          sum -= coverage(candidates[s], candidates[j].anchor, metric);
          ++local.distance_evals;
        }
      }
      out[k] = sum;
    }
    return out;
  };

  result.used_subtraction = n > kept && kept > n - kept;
  result.coverage_sums = result.used_subtraction ? by_subtraction() : from_scratch();

  if (options.verify_cache) {
    Counters scratch;
    const auto reference = compute_coverage_sums(result.kept, metric, &scratch);
    const auto alternative = by_subtraction();
    for (std::size_t k = 0; k < kept; ++k) {
      const double tol = 1e-9 * std::max(1.0, std::abs(reference[k]));
      if (std::abs(reference[k] - result.coverage_sums[k]) > tol ||
          std::abs(reference[k] - alternative[k]) > tol) {
        throw std::logic_error("reduce_wksc: cached coverage sums diverged");
      }
    }
  }

  if (counters) *counters += local;
  return result;
}

namespace {

std::vector<double> coverage_matrix(std::span<const ExtremeVector> candidates,
                                    DistanceMetric metric, Counters* counters) {
  const std::size_t n = candidates.size();
  std::vector<double> m(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) m[i * n + j] = coverage(candidates[i], candidates[j].anchor, metric);
    }
  }
  if (counters && n > 1) counters->distance_evals += n * (n - 1);
  return m;
}

std::vector<std::size_t> greedy_cover(std::span<const double> matrix,
                                      std::size_t n, double zeta,
                                      Counters* counters) {
  std::vector<bool> covered(n, false);
  std::vector<bool> chosen(n, false);
  std::size_t uncovered = n;
  std::vector<std::size_t> selected;
  while (uncovered > 0) {
    std::size_t best = n;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (chosen[i]) continue;
      std::size_t count = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!covered[j] && matrix[i * n + j] >= zeta) ++count;
      }
      if (count > best_count) {
        best = i;
        best_count = count;
      }
    }
    // Every uncovered candidate covers itself, so best_count >= 1.
    chosen[best] = true;
    selected.push_back(best);
    for (std::size_t j = 0; j < n; ++j) {
      if (!covered[j] && matrix[best * n + j] >= zeta) {
        covered[j] = true;
        --uncovered;
      }
    }
  }
  if (counters) ++counters->set_cover_runs;
  return selected;
}

}  // namespace

SetCoverResult reduce_set_cover(std::span<const ExtremeVector> candidates,
                                double zeta, DistanceMetric metric,
                                Counters* counters) {
  if (!(zeta > 0.0 && zeta < 1.0)) {
    throw std::invalid_argument("reduce_set_cover: zeta must lie in (0, 1)");
  }
  const auto matrix = coverage_matrix(candidates, metric, counters);
  return {greedy_cover(matrix, candidates.size(), zeta, counters)};
}

BudgetedSetCoverResult reduce_set_cover_budget(
    std::span<const ExtremeVector> candidates, std::size_t budget,
    double epsilon, DistanceMetric metric, Counters* counters) {
  if (budget < 1) {
    throw std::invalid_argument("reduce_set_cover_budget: budget must be >= 1");
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("reduce_set_cover_budget: epsilon must be positive");
  }
  const std::size_t n = candidates.size();
  BudgetedSetCoverResult result;
  if (n == 0) return result;

  if (budget >= n) {
    result.selected.resize(n);
    for (std::size_t i = 0; i < n; ++i) result.selected[i] = i;
    result.zeta = kZetaHigh;
    return result;
  }

  const auto matrix = coverage_matrix(candidates, metric, counters);
  // The loosest threshold keeps the fewest EVs. If even that is over budget
  // no threshold fits and the greedy order decides what survives.
  auto low = greedy_cover(matrix, n, kZetaLow, counters);
  if (low.size() > budget) {
    low.resize(budget);
    result.selected = std::move(low);
    result.zeta = kZetaLow;
    result.truncated = true;
    return result;
  }

  double feasible = kZetaLow;
  double infeasible = kZetaHigh;
  result.selected = std::move(low);
  result.zeta = feasible;
  while (infeasible - feasible >= epsilon) {
    const double mid = 0.5 * (feasible + infeasible);
    ++result.iterations;
    if (counters) ++counters->bisection_iterations;
    auto cover = greedy_cover(matrix, n, mid, counters);
    if (cover.size() <= budget) {
      feasible = mid;
      result.selected = std::move(cover);
      result.zeta = mid;
    } else {
      infeasible = mid;
    }
  }
  return result;
}

void ClusterParams::validate() const {
  if (!(epsilon > 0.0)) throw std::invalid_argument("dbscan epsilon must be positive");
  if (min_points < 1) throw std::invalid_argument("dbscan min_points must be >= 1");
}

std::vector<LabeledSample> dbscan_centroids(std::span<const LabeledSample> batch,
                                            const ClusterParams& params,
                                            DistanceMetric metric) {
  params.validate();
  const std::size_t n = batch.size();
  constexpr long kUnvisited = -2;
  constexpr long kNoise = -1;
  std::vector<long> cluster(n, kUnvisited);

  auto region = [&](std::size_t p) {
    std::vector<std::size_t> out;
    for (std::size_t q = 0; q < n; ++q) {
      if (distance(batch[p].features, batch[q].features, metric) <= params.epsilon) {
        out.push_back(q);
      }
    }
    return out;
  };

  long next_cluster = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (cluster[i] != kUnvisited) continue;
    auto neighbors = region(i);
    if (neighbors.size() < params.min_points) {
      cluster[i] = kNoise;
      continue;
    }
    const long id = next_cluster++;
    cluster[i] = id;
    std::deque<std::size_t> frontier(neighbors.begin(), neighbors.end());
    while (!frontier.empty()) {
      const std::size_t q = frontier.front();
      frontier.pop_front();
      if (cluster[q] == kNoise) cluster[q] = id;  // border point
      if (cluster[q] != kUnvisited) continue;
      cluster[q] = id;
      auto more = region(q);
      if (more.size() >= params.min_points) {
        frontier.insert(frontier.end(), more.begin(), more.end());
      }
    }
  }

  std::vector<FeatureVector> sums(static_cast<std::size_t>(next_cluster));
  std::vector<std::size_t> counts(sums.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (cluster[i] < 0) continue;
    auto& sum = sums[static_cast<std::size_t>(cluster[i])];
    if (sum.empty()) sum.assign(batch[i].features.size(), 0.0);
    for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += batch[i].features[d];
    ++counts[static_cast<std::size_t>(cluster[i])];
  }

  std::vector<LabeledSample> out;
  std::vector<bool> emitted(sums.size(), false);
  for (std::size_t i = 0; i < n; ++i) {
    if (cluster[i] < 0) {
      out.push_back(batch[i]);
      continue;
    }
    const auto c = static_cast<std::size_t>(cluster[i]);
    if (emitted[c]) continue;
    emitted[c] = true;
    FeatureVector mean = sums[c];
    for (double& v : mean) v /= static_cast<double>(counts[c]);
    out.push_back({std::move(mean), batch[i].label});
  }
  return out;
}

std::string to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::kNone:
      return "none";
    case ReductionKind::kSetCover:
      return "set-cover";
    case ReductionKind::kSetCoverBudget:
      return "set-cover-budget";
    case ReductionKind::kWksc:
      return "wksc";
  }
  return "none";
}

ReductionKind parse_reduction(std::string_view name) {
  if (name == "none") return ReductionKind::kNone;
  if (name == "set-cover") return ReductionKind::kSetCover;
  if (name == "set-cover-budget") return ReductionKind::kSetCoverBudget;
  if (name == "wksc") return ReductionKind::kWksc;
  throw std::invalid_argument("unknown reduction '" + std::string(name) + "'");
}

void reduce_model(EVMModel& model, ReductionKind kind, Counters* counters,
                  const WkscOptions& options) {
  if (kind == ReductionKind::kNone) return;
  const EVMConfig& config = model.config;
  if ((kind == ReductionKind::kWksc || kind == ReductionKind::kSetCoverBudget) &&
      !config.budget) {
    throw std::invalid_argument(to_string(kind) + " reduction requires a budget");
  }
  for (auto& [label, cls] : model.classes) {
    if (kind == ReductionKind::kWksc) {
      auto result = reduce_wksc(cls.evs, cls.coverage_sums, *config.budget,
                                config.metric, counters, options);
      cls.evs = std::move(result.kept);
      cls.coverage_sums = std::move(result.coverage_sums);
      continue;
    }
    std::vector<std::size_t> selected =
        kind == ReductionKind::kSetCover
            ? reduce_set_cover(cls.evs, config.coverage_threshold, config.metric,
                               counters)
                  .selected
            : reduce_set_cover_budget(cls.evs, *config.budget,
                                      config.bisection_tolerance, config.metric,
                                      counters)
                  .selected;
    std::vector<ExtremeVector> kept;
    kept.reserve(selected.size());
    for (std::size_t idx : selected) kept.push_back(std::move(cls.evs[idx]));
    cls.evs = std::move(kept);
    cls.coverage_sums = compute_coverage_sums(cls.evs, config.metric, counters);
  }
}

}  // namespace ievm
