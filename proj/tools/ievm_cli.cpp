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

// Command line front end: synth, fit, predict, reduce, run, convert.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ievm/core.hpp"
#include "ievm/experiment.hpp"
#include "ievm/features_io.hpp"
#include "ievm/fitting.hpp"
#include "ievm/model_io.hpp"
#include "ievm/predict.hpp"
#include "ievm/reduction.hpp"
#include "ievm/synth.hpp"

namespace {

ievm::FeatureFormat resolve_format(const std::string& explicit_format,
                                   const std::string& path) {
  return explicit_format.empty() ? ievm::feature_format_for_path(path)
                                 : ievm::parse_feature_format(explicit_format);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental extreme value machine toolkit"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate Gaussian blob features");
  std::size_t classes = 3, per_class = 50, dim = 2;
  double spread = 1.0;
  std::uint64_t synth_seed = 0;
  std::string synth_out, synth_format;
  synth->add_option("--classes", classes)->check(CLI::PositiveNumber);
  synth->add_option("--per-class", per_class)->check(CLI::PositiveNumber);
  synth->add_option("--dim", dim)->check(CLI::PositiveNumber);
  synth->add_option("--spread", spread)->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_seed);
  synth->add_option("--out", synth_out)->required();
  synth->add_option("--format", synth_format, "csv or bin (default: by extension)");

  // fit
  auto* fit = app.add_subcommand("fit", "Fit a model, or partially fit an existing one");
  std::string fit_data, fit_data_format, fit_out, fit_model;
  ievm::EVMConfig fit_config;
  std::string fit_metric = "euclidean", fit_reduction = "none";
  std::optional<std::size_t> fit_budget;
  fit->add_option("--data", fit_data)->required();
  fit->add_option("--data-format", fit_data_format);
  fit->add_option("--out", fit_out)->required();
  fit->add_option("--model", fit_model, "existing model to update incrementally");
  fit->add_option("--tail-size", fit_config.tail_size);
  fit->add_option("--alpha", fit_config.distance_multiplier);
  fit->add_option("--metric", fit_metric);
  fit->add_option("--delta", fit_config.rejection_threshold);
  fit->add_option("--zeta", fit_config.coverage_threshold);
  fit->add_option("--epsilon", fit_config.bisection_tolerance);
  fit->add_option("--budget", fit_budget);
  fit->add_option("--reduction", fit_reduction, "none, set-cover, set-cover-budget, wksc");

  // predict
  auto* pred = app.add_subcommand("predict", "Classify feature vectors");
  std::string pred_model, pred_data, pred_data_format, pred_out;
  std::optional<double> pred_delta;
  pred->add_option("--model", pred_model)->required();
  pred->add_option("--data", pred_data)->required();
  pred->add_option("--data-format", pred_data_format);
  pred->add_option("--delta", pred_delta, "rejection threshold (default: model's)");
  pred->add_option("--out", pred_out, "csv output (default: stdout)");

  // reduce
  auto* red = app.add_subcommand("reduce", "Reduce the extreme vectors of a model");
  std::string red_model, red_out, red_kind = "wksc";
  std::optional<std::size_t> red_budget;
  std::optional<double> red_zeta, red_epsilon;
  red->add_option("--model", red_model)->required();
  red->add_option("--out", red_out)->required();
  red->add_option("--reduction", red_kind, "set-cover, set-cover-budget, wksc");
  red->add_option("--budget", red_budget);
  red->add_option("--zeta", red_zeta);
  red->add_option("--epsilon", red_epsilon);

  // run
  auto* run = app.add_subcommand("run", "Run a protocol experiment from a config file");
  std::string run_config, run_report, run_format = "json", run_manifest;
  run->add_option("--config", run_config)->required();
  run->add_option("--out-report", run_report)->required();
  run->add_option("--format", run_format)->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--manifest-out", run_manifest, "write the protocol stream manifest");

  // convert
  auto* conv = app.add_subcommand("convert", "Convert features between csv and binary");
  std::string conv_in, conv_out, conv_from, conv_to;
  conv->add_option("--in", conv_in)->required();
  conv->add_option("--out", conv_out)->required();
  conv->add_option("--from", conv_from);
  conv->add_option("--to", conv_to);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      const auto samples = ievm::synth_blobs(classes, per_class, dim, spread, synth_seed);
      ievm::save_features(samples, synth_out, resolve_format(synth_format, synth_out));
    } else if (*fit) {
      const auto data =
          ievm::load_features(fit_data, resolve_format(fit_data_format, fit_data));
      ievm::Counters counters;
      ievm::EVMModel model;
      if (!fit_model.empty()) {
        model = ievm::partial_fit(ievm::load_model(fit_model), data, &counters);
      } else {
        fit_config.metric = ievm::parse_metric(fit_metric);
        fit_config.budget = fit_budget;
        model = ievm::batch_fit(data, fit_config, &counters);
      }
      if (fit_budget) model.config.budget = fit_budget;
      ievm::reduce_model(model, ievm::parse_reduction(fit_reduction), &counters);
      ievm::save_model(model, fit_out);
      std::cerr << "fitted " << model.size() << " extreme vectors ("
                << counters.weibull_refits << " Weibull fits)\n";
    } else if (*pred) {
      const auto model = ievm::load_model(pred_model);
      const auto data =
          ievm::load_features(pred_data, resolve_format(pred_data_format, pred_data));
      const double delta = pred_delta.value_or(model.config.rejection_threshold);
      std::string out = "label,predicted,score\n";
      char buf[32];
      for (const auto& s : data) {
        const auto p = ievm::predict(model, s.features, delta);
        std::snprintf(buf, sizeof(buf), "%.17g", p.score);
        out += s.label + ',' + p.label + ',' + buf + '\n';
      }
      write_text(pred_out, out);
    } else if (*red) {
      auto model = ievm::load_model(red_model);
      if (red_budget) model.config.budget = red_budget;
      if (red_zeta) model.config.coverage_threshold = *red_zeta;
      if (red_epsilon) model.config.bisection_tolerance = *red_epsilon;
      model.config.validate();
      ievm::Counters counters;
      ievm::reduce_model(model, ievm::parse_reduction(red_kind), &counters);
      ievm::save_model(model, red_out);
      std::cerr << "kept " << model.size() << " extreme vectors\n";
    } else if (*run) {
      const auto config = ievm::load_config(run_config);
      const auto data = ievm::load_dataset(config);
      const auto stream = ievm::make_stream(config, data);
      if (!run_manifest.empty()) write_text(run_manifest, ievm::manifest_to_json(stream));
      const auto report = ievm::run_experiment(config, stream);
      ievm::emit_report(report, run_report, ievm::parse_report_format(run_format));
    } else if (*conv) {
      const auto samples =
          ievm::load_features(conv_in, resolve_format(conv_from, conv_in));
      ievm::save_features(samples, conv_out, resolve_format(conv_to, conv_out));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
