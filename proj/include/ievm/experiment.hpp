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

#ifndef IEVM_EXPERIMENT_HPP_
#define IEVM_EXPERIMENT_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ievm/core.hpp"
#include "ievm/features_io.hpp"
#include "ievm/fitting.hpp"
#include "ievm/metrics.hpp"
#include "ievm/protocols.hpp"
#include "ievm/reduction.hpp"

namespace ievm {

enum class Method { kEvm, kIevm, kCEvm, kCIevm, kOsnn, kTnn };

std::string to_string(Method method);
Method parse_method(std::string_view name);

struct ExperimentConfig {
  Method method = Method::kIevm;
  ReductionKind reduction = ReductionKind::kNone;
  EVMConfig evm;
  ClusterParams cluster;

  int protocol = 2;  // 1 or 2
  double known_fraction = 0.5;
  std::uint64_t seed = 0;
  // protocol 1
  std::size_t batch_size = 24;
  std::size_t epochs = 10;
  double test_fraction = 0.2;
  // protocol 2
  std::size_t classes_per_batch = 2;
  std::size_t test_samples_per_known = 1;

  // Empty path = synthetic blobs.
  std::string data_path;
  FeatureFormat data_format = FeatureFormat::kCsv;
  std::size_t synth_classes = 10;
  std::size_t synth_per_class = 30;
  std::size_t synth_dim = 2;
  double synth_spread = 1.0;
  std::uint64_t synth_seed = 0;

  std::vector<double> far_targets = {0.1, 0.01};
  Averaging averaging = Averaging::kMicro;
  bool record_timing = false;
  // Cross-check the cached reduction sums against a full recomputation.
  bool verify = false;

  void validate() const;
  Protocol1Params protocol1() const;
  Protocol2Params protocol2() const;
};

// Flat "key = value" document, '#' starts a comment. Unknown keys throw.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
std::vector<std::pair<std::string, std::string>> config_entries(
    const ExperimentConfig& config);
std::string format_config(const ExperimentConfig& config);

struct DirPoint {
  double far_target = 0.0;
  std::optional<double> threshold;  // unset when no unknowns were evaluated
  double dir = 0.0;

  friend bool operator==(const DirPoint&, const DirPoint&) = default;
};

struct EpochReport {
  std::size_t epoch = 0;
  std::size_t batch_size = 0;
  std::size_t samples_seen = 0;
  double openness = 0.0;
  std::size_t known_test = 0;
  std::size_t unknown_test = 0;
  std::vector<DirPoint> dir;
  std::map<std::string, std::size_t> ev_counts;
  std::size_t total_evs = 0;
  std::optional<double> update_ratio;
  Counters counters;  // cumulative over the run
  std::optional<double> seconds;

  friend bool operator==(const EpochReport&, const EpochReport&) = default;
};

struct RunReport {
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;
  std::vector<EpochReport> epochs;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

std::vector<LabeledSample> load_dataset(const ExperimentConfig& config);
ProtocolStream make_stream(const ExperimentConfig& config,
                           std::span<const LabeledSample> data);

// fit (or append) -> optional clustering -> reduction -> evaluation, once per
// batch of the configured protocol.
RunReport run_experiment(const ExperimentConfig& config);
RunReport run_experiment(const ExperimentConfig& config,
                         const ProtocolStream& stream);

enum class ReportFormat { kJson, kCsv };
ReportFormat parse_report_format(std::string_view name);

std::string report_to_json(const RunReport& report);
RunReport report_from_json(std::string_view text);
std::string report_to_csv(const RunReport& report);
void emit_report(const RunReport& report, const std::string& path,
                 ReportFormat format);

std::string manifest_to_json(const ProtocolStream& stream);
// Ids, classes and schedule only; call materialize() to attach samples.
ProtocolStream manifest_from_json(std::string_view text);

}  // namespace ievm

#endif  // IEVM_EXPERIMENT_HPP_
