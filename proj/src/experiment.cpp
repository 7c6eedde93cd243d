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

#include "ievm/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "binary_io.hpp"
#include "ievm/baselines.hpp"
#include "ievm/predict.hpp"
#include "ievm/synth.hpp"

namespace ievm {

// Insertion order keeps reports and manifests stable and readable.
using json = nlohmann::ordered_json;

std::string to_string(Method method) {
  switch (method) {
    case Method::kEvm:
      return "evm";
    case Method::kIevm:
      return "ievm";
    case Method::kCEvm:
      return "c-evm";
    case Method::kCIevm:
      return "c-ievm";
    case Method::kOsnn:
      return "osnn";
    case Method::kTnn:
      return "tnn";
  }
  return "ievm";
}

Method parse_method(std::string_view name) {
  if (name == "evm") return Method::kEvm;
  if (name == "ievm") return Method::kIevm;
  if (name == "c-evm") return Method::kCEvm;
  if (name == "c-ievm") return Method::kCIevm;
  if (name == "osnn") return Method::kOsnn;
  if (name == "tnn") return Method::kTnn;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

namespace {

bool is_nn(Method m) { return m == Method::kOsnn || m == Method::kTnn; }
bool is_clustered(Method m) { return m == Method::kCEvm || m == Method::kCIevm; }
bool is_incremental(Method m) { return m == Method::kIevm || m == Method::kCIevm; }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("config key '" + std::string(key) +
                                "': cannot parse '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("config key '" + std::string(key) +
                              "': expected a boolean, got '" + std::string(text) + "'");
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

std::vector<double> split_doubles(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = trim(text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    out.push_back(parse_number<double>(key, item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view key,
                                  std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"method", [](auto& c, auto, auto v) { c.method = parse_method(v); }},
      {"reduction", [](auto& c, auto, auto v) { c.reduction = parse_reduction(v); }},
      {"tail_size",
       [](auto& c, auto k, auto v) { c.evm.tail_size = parse_number<std::size_t>(k, v); }},
      {"alpha",
       [](auto& c, auto k, auto v) { c.evm.distance_multiplier = parse_number<double>(k, v); }},
      {"metric", [](auto& c, auto, auto v) { c.evm.metric = parse_metric(v); }},
      {"budget",
       [](auto& c, auto k, auto v) {
         if (v == "unlimited") {
           c.evm.budget.reset();
         } else {
           c.evm.budget = parse_number<std::size_t>(k, v);
         }
       }},
      {"delta",
       [](auto& c, auto k, auto v) { c.evm.rejection_threshold = parse_number<double>(k, v); }},
      {"zeta",
       [](auto& c, auto k, auto v) { c.evm.coverage_threshold = parse_number<double>(k, v); }},
      {"epsilon",
       [](auto& c, auto k, auto v) { c.evm.bisection_tolerance = parse_number<double>(k, v); }},
      {"shape_cap",
       [](auto& c, auto k, auto v) { c.evm.shape_cap = parse_number<double>(k, v); }},
      {"dbscan_epsilon",
       [](auto& c, auto k, auto v) { c.cluster.epsilon = parse_number<double>(k, v); }},
      {"dbscan_min_points",
       [](auto& c, auto k, auto v) { c.cluster.min_points = parse_number<std::size_t>(k, v); }},
      {"protocol", [](auto& c, auto k, auto v) { c.protocol = parse_number<int>(k, v); }},
      {"known_fraction",
       [](auto& c, auto k, auto v) { c.known_fraction = parse_number<double>(k, v); }},
      {"seed", [](auto& c, auto k, auto v) { c.seed = parse_number<std::uint64_t>(k, v); }},
      {"batch_size",
       [](auto& c, auto k, auto v) { c.batch_size = parse_number<std::size_t>(k, v); }},
      {"epochs", [](auto& c, auto k, auto v) { c.epochs = parse_number<std::size_t>(k, v); }},
      {"test_fraction",
       [](auto& c, auto k, auto v) { c.test_fraction = parse_number<double>(k, v); }},
      {"classes_per_batch",
       [](auto& c, auto k, auto v) { c.classes_per_batch = parse_number<std::size_t>(k, v); }},
      {"test_samples_per_known",
       [](auto& c, auto k, auto v) {
         c.test_samples_per_known = parse_number<std::size_t>(k, v);
       }},
      {"data", [](auto& c, auto, auto v) { c.data_path = std::string(v); }},
      {"data_format",
       [](auto& c, auto, auto v) { c.data_format = parse_feature_format(v); }},
      {"synth_classes",
       [](auto& c, auto k, auto v) { c.synth_classes = parse_number<std::size_t>(k, v); }},
      {"synth_per_class",
       [](auto& c, auto k, auto v) { c.synth_per_class = parse_number<std::size_t>(k, v); }},
      {"synth_dim",
       [](auto& c, auto k, auto v) { c.synth_dim = parse_number<std::size_t>(k, v); }},
      {"synth_spread",
       [](auto& c, auto k, auto v) { c.synth_spread = parse_number<double>(k, v); }},
      {"synth_seed",
       [](auto& c, auto k, auto v) { c.synth_seed = parse_number<std::uint64_t>(k, v); }},
      {"far_targets", [](auto& c, auto k, auto v) { c.far_targets = split_doubles(k, v); }},
      {"averaging", [](auto& c, auto, auto v) { c.averaging = parse_averaging(v); }},
      {"record_timing", [](auto& c, auto k, auto v) { c.record_timing = parse_bool(k, v); }},
      {"verify", [](auto& c, auto k, auto v) { c.verify = parse_bool(k, v); }},
  };
  return table;
}

}  // namespace

void ExperimentConfig::validate() const {
  evm.validate();
  if (is_clustered(method)) cluster.validate();
  if (is_nn(method) && reduction != ReductionKind::kNone) {
    throw std::invalid_argument("nearest-neighbor baselines accept reduction = none only");
  }
  if ((reduction == ReductionKind::kWksc ||
       reduction == ReductionKind::kSetCoverBudget) &&
      !evm.budget) {
    throw std::invalid_argument(to_string(reduction) + " reduction requires a budget");
  }
  if (protocol != 1 && protocol != 2) {
    throw std::invalid_argument("protocol must be 1 or 2");
  }
  if (far_targets.empty()) throw std::invalid_argument("far_targets must not be empty");
  for (double f : far_targets) {
    if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("far targets must lie in (0, 1]");
  }
}

Protocol1Params ExperimentConfig::protocol1() const {
  return {known_fraction, batch_size, epochs, seed, test_fraction};
}

Protocol2Params ExperimentConfig::protocol2() const {
  return {known_fraction, classes_per_batch, test_samples_per_known, seed};
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key '" + std::string(key) + "'");
    }
    if (!seen.insert(std::string(key)).second) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": duplicate key '" + std::string(key) + "'");
    }
    it->second(config, key, value);
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  try {
    return parse_config(detail::read_file(path));
  } catch (const std::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::vector<std::pair<std::string, std::string>> config_entries(
    const ExperimentConfig& c) {
  return {
      {"method", to_string(c.method)},
      {"reduction", to_string(c.reduction)},
      {"tail_size", std::to_string(c.evm.tail_size)},
      {"alpha", format_double(c.evm.distance_multiplier)},
      {"metric", to_string(c.evm.metric)},
      {"budget", c.evm.budget ? std::to_string(*c.evm.budget) : "unlimited"},
      {"delta", format_double(c.evm.rejection_threshold)},
      {"zeta", format_double(c.evm.coverage_threshold)},
      {"epsilon", format_double(c.evm.bisection_tolerance)},
      {"shape_cap", format_double(c.evm.shape_cap)},
      {"dbscan_epsilon", format_double(c.cluster.epsilon)},
      {"dbscan_min_points", std::to_string(c.cluster.min_points)},
      {"protocol", std::to_string(c.protocol)},
      {"known_fraction", format_double(c.known_fraction)},
      {"seed", std::to_string(c.seed)},
      {"batch_size", std::to_string(c.batch_size)},
      {"epochs", std::to_string(c.epochs)},
      {"test_fraction", format_double(c.test_fraction)},
      {"classes_per_batch", std::to_string(c.classes_per_batch)},
      {"test_samples_per_known", std::to_string(c.test_samples_per_known)},
      {"data", c.data_path},
      {"data_format", c.data_format == FeatureFormat::kCsv ? "csv" : "bin"},
      {"synth_classes", std::to_string(c.synth_classes)},
      {"synth_per_class", std::to_string(c.synth_per_class)},
      {"synth_dim", std::to_string(c.synth_dim)},
      {"synth_spread", format_double(c.synth_spread)},
      {"synth_seed", std::to_string(c.synth_seed)},
      {"far_targets", join_doubles(c.far_targets)},
      {"averaging", to_string(c.averaging)},
      {"record_timing", c.record_timing ? "true" : "false"},
      {"verify", c.verify ? "true" : "false"},
  };
}

std::string format_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& [key, value] : config_entries(config)) {
    out += key + " = " + value + "\n";
  }
  return out;
}

std::vector<LabeledSample> load_dataset(const ExperimentConfig& config) {
  if (!config.data_path.empty()) return load_features(config.data_path, config.data_format);
  return synth_blobs(config.synth_classes, config.synth_per_class, config.synth_dim,
                     config.synth_spread, config.synth_seed);
}

ProtocolStream make_stream(const ExperimentConfig& config,
                           std::span<const LabeledSample> data) {
  return config.protocol == 1 ? protocol1_generate(data, config.protocol1())
                              : protocol2_generate(data, config.protocol2());
}

RunReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto data = load_dataset(config);
  return run_experiment(config, make_stream(config, data));
}

namespace {

std::vector<LabeledSample> cluster_by_class(std::span<const LabeledSample> samples,
                                            const ClusterParams& params,
                                            DistanceMetric metric) {
  std::map<std::string, std::vector<LabeledSample>> by_class;
  for (const auto& s : samples) by_class[s.label].push_back(s);
  std::vector<LabeledSample> out;
  for (const auto& [label, members] : by_class) {
    auto centroids = dbscan_centroids(members, params, metric);
    out.insert(out.end(), std::make_move_iterator(centroids.begin()),
               std::make_move_iterator(centroids.end()));
  }
  return out;
}

std::size_t class_count(std::span<const LabeledSample> samples) {
  std::set<std::string_view> labels;
  for (const auto& s : samples) labels.insert(s.label);
  return labels.size();
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config,
                         const ProtocolStream& stream) {
  config.validate();
  RunReport report;
  report.config = config_entries(config);
  report.seed = config.seed;

  const Method method = config.method;
  const WkscOptions wksc_options{config.verify};
  EVMModel model;
  model.config = config.evm;
  bool has_model = false;
  NNStore store{{}, config.evm.metric};
  std::vector<LabeledSample> seen_samples;  // cyclic retraining input
  std::vector<LabeledSample> pending;       // waiting for a second class
  std::set<std::string> trained_classes;
  Counters counters;
  std::size_t samples_seen = 0;

  for (std::size_t b = 0; b < stream.batches.size(); ++b) {
    const StreamBatch& batch = stream.batches[b];
    const auto start = std::chrono::steady_clock::now();
    EpochReport epoch;
    epoch.epoch = batch.epoch;
    epoch.batch_size = batch.samples.size();
    samples_seen += batch.samples.size();
    epoch.samples_seen = samples_seen;
    epoch.openness = b < stream.openness_schedule.size() ? stream.openness_schedule[b] : 0.0;
    for (const auto& s : batch.samples) trained_classes.insert(s.label);

    try {
      if (is_nn(method)) {
        store = nn_partial_fit(std::move(store), batch.samples);
      } else if (is_incremental(method)) {
        std::vector<LabeledSample> incoming =
            method == Method::kCIevm
                ? cluster_by_class(batch.samples, config.cluster, config.evm.metric)
                : batch.samples;
        if (has_model) {
          epoch.update_ratio = update_ratio(model, incoming);
          model = partial_fit(std::move(model), incoming, &counters);
        } else {
          pending.insert(pending.end(), incoming.begin(), incoming.end());
          if (class_count(pending) >= 2) {
            model = batch_fit(pending, config.evm, &counters);
            model.epoch = b;
            has_model = true;
            pending.clear();
          }
        }
        if (has_model) reduce_model(model, config.reduction, &counters, wksc_options);
      } else {
        if (has_model) epoch.update_ratio = update_ratio(model, batch.samples);
        seen_samples.insert(seen_samples.end(), batch.samples.begin(),
                            batch.samples.end());
        if (class_count(seen_samples) >= 2) {
          const auto training =
              method == Method::kCEvm
                  ? cluster_by_class(seen_samples, config.cluster, config.evm.metric)
                  : seen_samples;
          model = batch_fit(training, config.evm, &counters);
          model.epoch = b;
          has_model = true;
          reduce_model(model, config.reduction, &counters, wksc_options);
        }
      }

      std::vector<EvalRecord> records;
      records.reserve(stream.test_set.size());
      for (const auto& sample : stream.test_set) {
        Prediction p;
        if (method == Method::kOsnn) {
          p = store.class_count() >= 2 ? osnn_predict(store, sample.features, 1.0)
                                       : tnn_predict(store, sample.features, 0.0);
        } else if (method == Method::kTnn) {
          p = tnn_predict(store, sample.features,
                          std::numeric_limits<double>::infinity());
        } else {
          p = predict(model, sample.features, 0.0);
        }
        const bool known = trained_classes.count(sample.label) > 0;
        records.push_back({known ? sample.label : std::string(kUnknownLabel),
                           std::string(p.label), p.score});
        if (known) {
          ++epoch.known_test;
        } else {
          ++epoch.unknown_test;
        }
      }
      for (double target : config.far_targets) {
        DirPoint point{target, std::nullopt, 0.0};
        if (epoch.unknown_test > 0) {
          point.threshold = derive_threshold(records, target);
          point.dir = dir_at_threshold(records, *point.threshold, config.averaging);
        } else {
          point.dir = dir_at_threshold(records, -std::numeric_limits<double>::infinity(),
                                       config.averaging);
        }
        epoch.dir.push_back(point);
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("epoch " + std::to_string(batch.epoch) + ": " + e.what());
    }

    if (is_nn(method)) {
      for (const auto& s : store.samples) ++epoch.ev_counts[s.label];
      epoch.total_evs = store.samples.size();
    } else {
      for (const auto& [label, cls] : model.classes) {
        epoch.ev_counts[label] = cls.evs.size();
      }
      epoch.total_evs = model.size();
    }
    epoch.counters = counters;
    if (config.record_timing) {
      epoch.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    }
    report.epochs.push_back(std::move(epoch));
  }
  return report;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  throw std::invalid_argument("unknown report format '" + std::string(name) + "'");
}

namespace {

json counters_to_json(const Counters& c) {
  return {{"weibull_refits", c.weibull_refits},
          {"distance_evals", c.distance_evals},
          {"greedy_selections", c.greedy_selections},
          {"bisection_iterations", c.bisection_iterations},
          {"set_cover_runs", c.set_cover_runs},
          {"evs_updated", c.evs_updated},
          {"evs_skipped", c.evs_skipped},
          {"evs_added", c.evs_added}};
}

Counters counters_from_json(const json& j) {
  Counters c;
  c.weibull_refits = j.at("weibull_refits").get<std::uint64_t>();
  c.distance_evals = j.at("distance_evals").get<std::uint64_t>();
  c.greedy_selections = j.at("greedy_selections").get<std::uint64_t>();
  c.bisection_iterations = j.at("bisection_iterations").get<std::uint64_t>();
  c.set_cover_runs = j.at("set_cover_runs").get<std::uint64_t>();
  c.evs_updated = j.at("evs_updated").get<std::uint64_t>();
  c.evs_skipped = j.at("evs_skipped").get<std::uint64_t>();
  c.evs_added = j.at("evs_added").get<std::uint64_t>();
  return c;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

std::string report_to_json(const RunReport& report) {
  json config = json::object();
  for (const auto& [k, v] : report.config) config[k] = v;
  json epochs = json::array();
  for (const auto& e : report.epochs) {
    json dir = json::array();
    for (const auto& p : e.dir) {
      dir.push_back({{"far_target", p.far_target},
                     {"threshold", optional_json(p.threshold)},
                     {"dir", p.dir}});
    }
    epochs.push_back({{"epoch", e.epoch},
                      {"batch_size", e.batch_size},
                      {"samples_seen", e.samples_seen},
                      {"openness", e.openness},
                      {"known_test", e.known_test},
                      {"unknown_test", e.unknown_test},
                      {"dir_at_far", dir},
                      {"ev_counts", e.ev_counts},
                      {"total_evs", e.total_evs},
                      {"update_ratio", optional_json(e.update_ratio)},
                      {"counters", counters_to_json(e.counters)},
                      {"seconds", optional_json(e.seconds)}});
  }
  json root = {{"config", config}, {"seed", report.seed}, {"epochs", epochs}};
  return root.dump(2) + "\n";
}

RunReport report_from_json(std::string_view text) {
  const json root = json::parse(text);
  RunReport report;
  for (const auto& [k, v] : root.at("config").items()) {
    report.config.emplace_back(k, v.get<std::string>());
  }
  report.seed = root.at("seed").get<std::uint64_t>();
  for (const auto& j : root.at("epochs")) {
    EpochReport e;
    e.epoch = j.at("epoch").get<std::size_t>();
    e.batch_size = j.at("batch_size").get<std::size_t>();
    e.samples_seen = j.at("samples_seen").get<std::size_t>();
    e.openness = j.at("openness").get<double>();
    e.known_test = j.at("known_test").get<std::size_t>();
    e.unknown_test = j.at("unknown_test").get<std::size_t>();
    for (const auto& p : j.at("dir_at_far")) {
      e.dir.push_back({p.at("far_target").get<double>(),
                       optional_from<double>(p.at("threshold")), p.at("dir").get<double>()});
    }
    e.ev_counts = j.at("ev_counts").get<std::map<std::string, std::size_t>>();
    e.total_evs = j.at("total_evs").get<std::size_t>();
    e.update_ratio = optional_from<double>(j.at("update_ratio"));
    e.counters = counters_from_json(j.at("counters"));
    e.seconds = optional_from<double>(j.at("seconds"));
    report.epochs.push_back(std::move(e));
  }
  return report;
}

std::string report_to_csv(const RunReport& report) {
  std::string out =
      "epoch,samples_seen,openness,far_target,threshold,dir,ev_count,update_ratio,"
      "weibull_refits,distance_evals,greedy_selections,bisection_iterations,"
      "set_cover_runs\n";
  for (const auto& e : report.epochs) {
    for (const auto& p : e.dir) {
      const auto& c = e.counters;
      out += std::to_string(e.epoch) + ',' + std::to_string(e.samples_seen) + ',' +
             format_double(e.openness) + ',' + format_double(p.far_target) + ',' +
             (p.threshold ? format_double(*p.threshold) : "") + ',' +
             format_double(p.dir) + ',' + std::to_string(e.total_evs) + ',' +
             (e.update_ratio ? format_double(*e.update_ratio) : "") + ',' +
             std::to_string(c.weibull_refits) + ',' + std::to_string(c.distance_evals) +
             ',' + std::to_string(c.greedy_selections) + ',' +
             std::to_string(c.bisection_iterations) + ',' +
             std::to_string(c.set_cover_runs) + '\n';
    }
  }
  return out;
}

void emit_report(const RunReport& report, const std::string& path,
                 ReportFormat format) {
  detail::write_file(path, format == ReportFormat::kJson ? report_to_json(report)
                                                         : report_to_csv(report));
}

std::string manifest_to_json(const ProtocolStream& stream) {
  json batches = json::array();
  for (const auto& b : stream.batches) {
    batches.push_back({{"epoch", b.epoch}, {"ids", b.ids}});
  }
  json root = {{"known_classes", stream.known_classes},
               {"unknown_classes", stream.unknown_classes},
               {"total_classes", stream.total_classes},
               {"openness_schedule", stream.openness_schedule},
               {"test_ids", stream.test_ids},
               {"batches", batches}};
  return root.dump(2) + "\n";
}

ProtocolStream manifest_from_json(std::string_view text) {
  const json root = json::parse(text);
  ProtocolStream stream;
  stream.known_classes = root.at("known_classes").get<std::vector<std::string>>();
  stream.unknown_classes = root.at("unknown_classes").get<std::vector<std::string>>();
  stream.total_classes = root.at("total_classes").get<std::size_t>();
  stream.openness_schedule = root.at("openness_schedule").get<std::vector<double>>();
  stream.test_ids = root.at("test_ids").get<std::vector<std::size_t>>();
  for (const auto& b : root.at("batches")) {
    StreamBatch batch;
    batch.epoch = b.at("epoch").get<std::size_t>();
    batch.ids = b.at("ids").get<std::vector<std::size_t>>();
    stream.batches.push_back(std::move(batch));
  }
  return stream;
}

}  // namespace ievm
