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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ievm/experiment.hpp"
#include "ievm/features_io.hpp"
#include "ievm/model_io.hpp"
#include "ievm/predict.hpp"
#include "ievm/synth.hpp"
#include "test_util.hpp"

using namespace ievm;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "ievm_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_run() {
  ExperimentConfig c;
  c.protocol = 2;
  c.known_fraction = 0.6;
  c.classes_per_batch = 2;
  c.synth_classes = 10;
  c.synth_per_class = 12;
  c.evm.tail_size = 10;
  c.evm.budget = 4;
  c.reduction = ReductionKind::kWksc;
  return c;
}

}  // namespace

// ---------------------------------------------------------------- synth

TEST_CASE("synth blobs") {
  const auto blobs = generate_blobs(3, 50, 2, 1.0, 9);
  CHECK(blobs.samples.size() == 150);
  std::set<std::string> labels;
  for (const auto& s : blobs.samples) labels.insert(s.label);
  CHECK(labels.size() == 3);
  CHECK(synth_blobs(3, 50, 2, 1.0, 9) == blobs.samples);
  CHECK(synth_blobs(3, 50, 2, 1.0, 10) != blobs.samples);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      CHECK(distance(blobs.means[i], blobs.means[j], DistanceMetric::kEuclidean) >=
            6.0 - 1e-9);
    }
  }
  for (std::size_t c = 0; c < 3; ++c) {
    std::vector<double> mean(2, 0.0);
    for (std::size_t i = 0; i < 50; ++i) {
      for (std::size_t d = 0; d < 2; ++d) mean[d] += blobs.samples[c * 50 + i].features[d] / 50;
    }
    CHECK(distance(mean, blobs.means[c], DistanceMetric::kEuclidean) <=
          5.0 / std::sqrt(50.0));
  }
  CHECK_THROWS(synth_blobs(0, 5, 2, 1.0, 0));
  CHECK(blob_label(3, 12) == "c03");
}

// ---------------------------------------------------------------- features

TEST_CASE("csv features") {
  const auto samples = parse_features_csv("label,f0,f1,f2\na,1,2,3\nb,4,5,6.5\n");
  REQUIRE(samples.size() == 2);
  CHECK(samples[1].label == "b");
  CHECK(samples[1].features == std::vector<double>{4, 5, 6.5});
  CHECK(parse_features_csv(format_features_csv(samples)) == samples);

  CHECK_THROWS_WITH(parse_features_csv("label,f0,f1\na,1,2\nb,3\n"),
                    doctest::Contains("row 3"));
  CHECK_THROWS(parse_features_csv("name,x\na,1\n"));
  CHECK_THROWS(parse_features_csv("label,f0\na,abc\n"));
  CHECK_THROWS(parse_features_csv(""));
}

TEST_CASE("binary features round trip") {
  const auto samples = synth_blobs(3, 4, 5, 1.0, 2);
  const auto bytes = format_features_binary(samples);
  CHECK(bytes.substr(0, 4) == "EVMF");
  const auto back = parse_features_binary(bytes);
  REQUIRE(back.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(back[i].label == samples[i].label);
    for (std::size_t d = 0; d < 5; ++d) {
      CHECK(back[i].features[d] == static_cast<double>(static_cast<float>(samples[i].features[d])));
    }
  }
  std::string bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS(parse_features_binary(bad));
  CHECK_THROWS(parse_features_binary(bytes.substr(0, bytes.size() - 3)));
  CHECK_THROWS(parse_features_binary(bytes + "z"));
}

TEST_CASE("csv to binary to csv through files") {
  const auto samples = synth_blobs(2, 3, 3, 1.0, 4);
  const auto csv = temp_path("f.csv"), bin = temp_path("f.bin"), csv2 = temp_path("g.csv");
  save_features(samples, csv.string(), FeatureFormat::kCsv);
  save_features(load_features(csv.string(), FeatureFormat::kCsv), bin.string(),
                FeatureFormat::kBinary);
  save_features(load_features(bin.string(), FeatureFormat::kBinary), csv2.string(),
                FeatureFormat::kCsv);
  const auto back = load_features(csv2.string(), FeatureFormat::kCsv);
  REQUIRE(back.size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    CHECK(back[i].label == samples[i].label);
    for (std::size_t d = 0; d < 3; ++d) {
      CHECK(std::abs(back[i].features[d] - samples[i].features[d]) <=
            1e-6 * std::max(1.0, std::abs(samples[i].features[d])));
    }
  }
  CHECK(feature_format_for_path("x.csv") == FeatureFormat::kCsv);
  CHECK(feature_format_for_path("x.bin") == FeatureFormat::kBinary);
  CHECK_THROWS(load_features(temp_path("missing.csv").string(), FeatureFormat::kCsv));
}

// ---------------------------------------------------------------- model io

TEST_CASE("model save and load") {
  const auto data = ievm::testing::shuffled(synth_blobs(3, 20, 3, 1.0, 5), 6);
  const auto batches = ievm::testing::split(data, 2);
  EVMConfig config;
  config.tail_size = 8;
  config.budget = 7;
  const auto model = batch_fit(batches[0], config);
  const auto path = temp_path("m.ievm");
  save_model(model, path.string());
  const auto loaded = load_model(path.string());
  CHECK(loaded == model);
  CHECK(serialize_model(loaded) == serialize_model(model));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-15.0, 15.0);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> x{u(rng), u(rng), u(rng)};
    const auto a = predict(model, x, 0.5), b = predict(loaded, x, 0.5);
    CHECK(a.label == b.label);
    CHECK(a.score == b.score);
  }

  CHECK(partial_fit(loaded, batches[1]) == partial_fit(model, batches[1]));
}

TEST_CASE("model load errors") {
  EVMConfig config;
  config.tail_size = 3;
  const auto bytes = serialize_model(batch_fit(synth_blobs(2, 4, 2, 1.0, 1), config));
  std::string bad_magic = bytes;
  bad_magic[1] = 'x';
  CHECK_THROWS(deserialize_model(bad_magic));
  std::string bad_version = bytes;
  bad_version[4] = 9;
  CHECK_THROWS_WITH(deserialize_model(bad_version),
                    doctest::Contains("version"));
  std::string corrupt = bytes;
  corrupt[bytes.size() / 2] ^= 0x55;
  CHECK_THROWS_WITH(deserialize_model(corrupt), doctest::Contains("checksum"));
  CHECK_THROWS(deserialize_model(bytes.substr(0, 10)));
  CHECK_THROWS(load_model(temp_path("nope.ievm").string()));
}

// ---------------------------------------------------------------- config

TEST_CASE("config parsing") {
  const auto c = parse_config(
      "# comment\nmethod = c-ievm\nreduction = wksc\nbudget = 5 # inline\n"
      "far_targets = 0.1, 0.05\nprotocol = 1\nverify = true\n");
  CHECK(c.method == Method::kCIevm);
  CHECK(c.reduction == ReductionKind::kWksc);
  CHECK(c.evm.budget == std::optional<std::size_t>(5));
  CHECK(c.far_targets == std::vector<double>{0.1, 0.05});
  CHECK(c.protocol == 1);
  CHECK(c.verify);

  const auto again = parse_config(format_config(c));
  CHECK(config_entries(again) == config_entries(c));

  CHECK_THROWS_WITH(parse_config("tail = 5\n"), doctest::Contains("unknown key"));
  CHECK_THROWS_WITH(parse_config("seed = 1\nseed = 2\n"), doctest::Contains("duplicate"));
  CHECK_THROWS(parse_config("seed 1\n"));
  CHECK_THROWS(parse_config("tail_size = five\n"));
  CHECK_THROWS(parse_config("reduction = wksc\n"));  // no budget
  CHECK_THROWS(parse_config("method = osnn\nreduction = set-cover\n"));
  CHECK_THROWS(parse_config("protocol = 3\n"));
  CHECK(parse_config("budget = unlimited\n").evm.budget == std::nullopt);
}

TEST_CASE("config files") {
  const auto path = temp_path("run.conf");
  std::ofstream(path) << "method = evm\nseed = 4\n";
  CHECK(load_config(path.string()).seed == 4);
  CHECK_THROWS(load_config(temp_path("absent.conf").string()));
}

// ---------------------------------------------------------------- runs

TEST_CASE("ievm without reduction matches a full refit on the union") {
  const auto data = synth_blobs(8, 15, 3, 1.0, 17);
  Protocol2Params params;
  params.known_fraction = 1.0;
  params.classes_per_batch = 2;
  params.seed = 3;
  const auto stream = protocol2_generate(data, params);
  REQUIRE(stream.batches.size() == 4);

  EVMConfig config;
  config.tail_size = 3;
  std::vector<std::vector<LabeledSample>> batches;
  for (const auto& b : stream.batches) {
    batches.push_back(b.samples);
  }
  Counters inc, full;
  const auto chained = ievm::testing::chain(batches, config, &inc);
  std::vector<LabeledSample> prefix;
  EVMModel refit;
  for (const auto& b : batches) {
    prefix.insert(prefix.end(), b.begin(), b.end());
    refit = batch_fit(prefix, config, &full);
  }
  CHECK(ievm::testing::max_param_deviation(chained, refit) <= 1e-9);
  CHECK(inc.weibull_refits < full.weibull_refits);

  ExperimentConfig ec;
  ec.evm = config;
  ec.method = Method::kIevm;
  const auto r_inc = run_experiment(ec, stream);
  ec.method = Method::kEvm;
  const auto r_full = run_experiment(ec, stream);
  CHECK(r_inc.epochs.back().counters.weibull_refits == inc.weibull_refits);
  CHECK(r_full.epochs.back().counters.weibull_refits == full.weibull_refits);
  // Same model, same test set, same scores.
  for (std::size_t i = 0; i < r_inc.epochs.back().dir.size(); ++i) {
    CHECK(r_inc.epochs.back().dir[i] == r_full.epochs.back().dir[i]);
  }
}

TEST_CASE("budget is respected at every epoch") {
  for (auto method : {Method::kIevm, Method::kEvm, Method::kCIevm, Method::kCEvm}) {
    auto c = small_run();
    c.method = method;
    c.verify = true;
    c.cluster.epsilon = 0.8;
    const auto report = run_experiment(c);
    CHECK(report.epochs.size() == 3);
    for (const auto& e : report.epochs) {
      for (const auto& [label, n] : e.ev_counts) CHECK(n <= 4);
    }
  }
}

TEST_CASE("bisection counters by reduction") {
  auto c = small_run();
  const auto wksc = run_experiment(c);
  CHECK(wksc.epochs.back().counters.bisection_iterations == 0);
  CHECK(wksc.epochs.back().counters.greedy_selections > 0);
  c.reduction = ReductionKind::kSetCoverBudget;
  c.evm.budget = 2;
  const auto scb = run_experiment(c);
  CHECK(scb.epochs.back().counters.bisection_iterations > 0);
}

TEST_CASE("nearest neighbor baselines run") {
  for (auto method : {Method::kOsnn, Method::kTnn}) {
    auto c = small_run();
    c.method = method;
    c.reduction = ReductionKind::kNone;
    const auto report = run_experiment(c);
    CHECK(report.epochs.back().total_evs > 0);
    for (const auto& e : report.epochs) {
      for (const auto& p : e.dir) {
        CHECK(p.dir >= 0.0);
        CHECK(p.dir <= 1.0);
      }
    }
  }
}

TEST_CASE("protocol I run and closed set epochs") {
  auto c = small_run();
  c.protocol = 1;
  c.batch_size = 8;
  c.epochs = 6;
  c.known_fraction = 0.5;
  c.synth_per_class = 20;
  const auto report = run_experiment(c);
  CHECK(report.epochs.size() == 6);
  CHECK(report.epochs[0].openness > report.epochs[3].openness);

  auto closed = small_run();
  closed.known_fraction = 1.0;
  const auto r = run_experiment(closed);
  // By the last epoch every test class has been trained on.
  CHECK(r.epochs.back().unknown_test == 0);
  for (const auto& p : r.epochs.back().dir) CHECK(p.threshold == std::nullopt);
}

TEST_CASE("errors carry the epoch") {
  auto c = small_run();
  c.data_path = temp_path("does_not_exist.csv").string();
  CHECK_THROWS(run_experiment(c));
}

// ---------------------------------------------------------------- reports

TEST_CASE("report round trips and determinism") {
  const auto c = small_run();
  const auto a = run_experiment(c);
  const auto b = run_experiment(c);
  CHECK(report_to_json(a) == report_to_json(b));
  CHECK(report_to_csv(a) == report_to_csv(b));
  CHECK(report_from_json(report_to_json(a)) == a);

  const auto csv = report_to_csv(a);
  const auto rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) - 1;
  CHECK(rows == a.epochs.size() * c.far_targets.size());

  const auto p1 = temp_path("r1.json"), p2 = temp_path("r2.json");
  emit_report(a, p1.string(), ReportFormat::kJson);
  emit_report(b, p2.string(), ReportFormat::kJson);
  CHECK(slurp(p1) == slurp(p2));
  CHECK(parse_report_format("csv") == ReportFormat::kCsv);
  CHECK_THROWS(parse_report_format("xml"));

  auto timed = c;
  timed.record_timing = true;
  CHECK(run_experiment(timed).epochs[0].seconds.has_value());
}

TEST_CASE("manifest round trip") {
  const auto c = small_run();
  const auto data = load_dataset(c);
  const auto stream = make_stream(c, data);
  auto back = manifest_from_json(manifest_to_json(stream));
  materialize(back, data);
  CHECK(back.known_classes == stream.known_classes);
  CHECK(back.test_set == stream.test_set);
  REQUIRE(back.batches.size() == stream.batches.size());
  for (std::size_t i = 0; i < back.batches.size(); ++i) {
    CHECK(back.batches[i].samples == stream.batches[i].samples);
  }
  CHECK(report_to_json(run_experiment(c, back)) == report_to_json(run_experiment(c, stream)));
}

TEST_CASE("method names round trip") {
  for (auto m : {Method::kEvm, Method::kIevm, Method::kCEvm, Method::kCIevm,
                 Method::kOsnn, Method::kTnn}) {
    CHECK(parse_method(to_string(m)) == m);
  }
  CHECK_THROWS(parse_method("svm"));
}
