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

#ifndef IEVM_REDUCTION_HPP_
#define IEVM_REDUCTION_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "ievm/core.hpp"
#include "ievm/fitting.hpp"

namespace ievm {

struct WkscOptions {
  // Rebuild the cache both ways (from scratch and by subtraction) and throw
  // std::logic_error if they disagree beyond 1e-9.
  bool verify_cache = false;
};

struct WkscResult {
  std::vector<ExtremeVector> kept;   // in selection order
  std::vector<double> coverage_sums;  // aligned with `kept`
  std::vector<std::size_t> selected;  // candidate indices, selection order
  bool used_subtraction = false;      // cache rebuilt without a reset
};

// Weighted maximum K-set cover reduction of one class. `sums` must be the
// current coverage sums of `candidates`. Each round keeps the candidate with
// the largest sum (lowest index on ties) and subtracts every remaining
// candidate's coverage of the kept anchor from its sum.
WkscResult reduce_wksc(std::span<const ExtremeVector> candidates,
                       std::span<const double> sums, std::size_t budget,
                       DistanceMetric metric, Counters* counters = nullptr,
                       const WkscOptions& options = {});

struct SetCoverResult {
  std::vector<std::size_t> selected;  // candidate indices, selection order
};

// Greedy minimum set cover where candidate i covers j iff psi_i(x_j) >= zeta.
SetCoverResult reduce_set_cover(std::span<const ExtremeVector> candidates,
                                double zeta, DistanceMetric metric,
                                Counters* counters = nullptr);

struct BudgetedSetCoverResult {
  std::vector<std::size_t> selected;
  double zeta = 0.0;
  std::size_t iterations = 0;
  bool truncated = false;
};

inline constexpr double kZetaLow = 1e-6;
inline constexpr double kZetaHigh = 1.0 - 1e-6;

// Bisection on zeta in [kZetaLow, kZetaHigh] for the largest coverage
// threshold whose greedy cover keeps at most `budget` candidates.
BudgetedSetCoverResult reduce_set_cover_budget(
    std::span<const ExtremeVector> candidates, std::size_t budget,
    double epsilon, DistanceMetric metric, Counters* counters = nullptr);

struct ClusterParams {
  double epsilon = 0.5;
  std::size_t min_points = 3;

  void validate() const;
};

// Class-wise DBSCAN. One mean centroid per cluster, emitted at the position of
// the cluster's first member; noise points pass through unchanged.
std::vector<LabeledSample> dbscan_centroids(std::span<const LabeledSample> batch,
                                            const ClusterParams& params,
                                            DistanceMetric metric);

enum class ReductionKind { kNone, kSetCover, kSetCoverBudget, kWksc };

std::string to_string(ReductionKind kind);
ReductionKind parse_reduction(std::string_view name);

// Applies a reduction to every class of the model using the model's config
// (coverage_threshold, budget, bisection_tolerance). Coverage sums are left
// consistent with the kept extreme vectors.
void reduce_model(EVMModel& model, ReductionKind kind,
                  Counters* counters = nullptr, const WkscOptions& options = {});

}  // namespace ievm

#endif  // IEVM_REDUCTION_HPP_
