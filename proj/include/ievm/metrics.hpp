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

#ifndef IEVM_METRICS_HPP_
#define IEVM_METRICS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ievm {

// One evaluated test sample. true_label is kUnknownLabel for samples of
// classes the model has not been trained on; predicted_label is the
// threshold-free argmax.
struct EvalRecord {
  std::string true_label;
  std::string predicted_label;
  double score = 0.0;

  bool is_known() const;
};

enum class Averaging { kMicro, kMacro };

std::string to_string(Averaging averaging);
Averaging parse_averaging(std::string_view name);

// Smallest threshold t such that the fraction of unknowns with score >= t does
// not exceed far_target. The threshold is placed just above the first unknown
// score that has to be rejected. Throws if there are no unknowns.
double derive_threshold(std::span<const EvalRecord> records, double far_target);

// Fraction of unknown records with score >= threshold.
double false_accept_rate(std::span<const EvalRecord> records, double threshold);

struct DirFarResult {
  std::vector<double> far_targets;
  std::vector<double> thresholds;
  std::vector<double> dir_values;
  Averaging averaging = Averaging::kMicro;
};

DirFarResult dir_at_far(std::span<const EvalRecord> records,
                        std::span<const double> far_targets, Averaging averaging);

// Detection and identification rate at a fixed threshold.
double dir_at_threshold(std::span<const EvalRecord> records, double threshold,
                        Averaging averaging);

struct ConfusionCounts {
  std::size_t known_correct = 0;
  std::size_t known_wrong = 0;
  std::size_t known_rejected = 0;
  std::size_t unknown_accepted = 0;
  std::size_t unknown_rejected = 0;

  std::size_t total() const {
    return known_correct + known_wrong + known_rejected + unknown_accepted +
           unknown_rejected;
  }
};

// A record is accepted iff its score >= threshold.
ConfusionCounts confusion_summary(std::span<const EvalRecord> records,
                                  double threshold);

}  // namespace ievm

#endif  // IEVM_METRICS_HPP_
