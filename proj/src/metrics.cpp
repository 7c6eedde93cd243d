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

#include "ievm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "ievm/core.hpp"

namespace ievm {

bool EvalRecord::is_known() const { return true_label != kUnknownLabel; }

std::string to_string(Averaging averaging) {
  return averaging == Averaging::kMacro ? "macro" : "micro";
}

Averaging parse_averaging(std::string_view name) {
  if (name == "micro") return Averaging::kMicro;
  if (name == "macro") return Averaging::kMacro;
  throw std::invalid_argument("unknown averaging '" + std::string(name) + "'");
}

double derive_threshold(std::span<const EvalRecord> records, double far_target) {
  if (!(far_target > 0.0 && far_target <= 1.0)) {
    throw std::invalid_argument("far_target must lie in (0, 1]");
  }
  std::vector<double> unknown;
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    lowest = std::min(lowest, r.score);
    if (!r.is_known()) unknown.push_back(r.score);
  }
  if (unknown.empty()) {
    throw std::invalid_argument("derive_threshold: no unknown records");
  }
  std::sort(unknown.begin(), unknown.end(), std::greater<>());

  const auto count = static_cast<double>(unknown.size());
  // Largest number of unknowns that may be accepted.
  auto allowed = static_cast<std::size_t>(std::floor(far_target * count + 1e-9));
  if (allowed > 0 && static_cast<double>(allowed) / count > far_target + 1e-12) {
    --allowed;
  }
  if (allowed >= unknown.size()) return lowest;
  return std::nextafter(unknown[allowed], std::numeric_limits<double>::infinity());
}

double false_accept_rate(std::span<const EvalRecord> records, double threshold) {
  std::size_t unknown = 0;
  std::size_t accepted = 0;
  for (const auto& r : records) {
    if (r.is_known()) continue;
    ++unknown;
    if (r.score >= threshold) ++accepted;
  }
  return unknown == 0 ? 0.0
                      : static_cast<double>(accepted) / static_cast<double>(unknown);
}

double dir_at_threshold(std::span<const EvalRecord> records, double threshold,
                        Averaging averaging) {
  std::map<std::string_view, std::pair<std::size_t, std::size_t>> per_class;
  std::size_t hits = 0;
  std::size_t knowns = 0;
  for (const auto& r : records) {
    if (!r.is_known()) continue;
    const bool hit = r.score >= threshold && r.predicted_label == r.true_label;
    auto& [class_hits, class_total] = per_class[r.true_label];
    ++class_total;
    ++knowns;
    if (hit) {
      ++class_hits;
      ++hits;
    }
  }
  if (knowns == 0) return 0.0;
  if (averaging == Averaging::kMicro) {
    return static_cast<double>(hits) / static_cast<double>(knowns);
  }
  double sum = 0.0;
  for (const auto& [label, counts] : per_class) {
    sum += static_cast<double>(counts.first) / static_cast<double>(counts.second);
  }
  return sum / static_cast<double>(per_class.size());
}

DirFarResult dir_at_far(std::span<const EvalRecord> records,
                        std::span<const double> far_targets, Averaging averaging) {
  DirFarResult result;
  result.averaging = averaging;
  for (double target : far_targets) {
    const double t = derive_threshold(records, target);
    result.far_targets.push_back(target);
    result.thresholds.push_back(t);
    result.dir_values.push_back(dir_at_threshold(records, t, averaging));
  }
  return result;
}

ConfusionCounts confusion_summary(std::span<const EvalRecord> records,
                                  double threshold) {
  ConfusionCounts c;
  for (const auto& r : records) {
    const bool accepted = r.score >= threshold;
    if (r.is_known()) {
      if (!accepted) {
        ++c.known_rejected;
      } else if (r.predicted_label == r.true_label) {
        ++c.known_correct;
      } else {
        ++c.known_wrong;
      }
    } else if (accepted) {
      ++c.unknown_accepted;
    } else {
      ++c.unknown_rejected;
    }
  }
  return c;
}

}  // namespace ievm
