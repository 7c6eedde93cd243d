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

#include <cmath>
#include <random>
#include <vector>

#include "ievm/fitting.hpp"
#include "ievm/predict.hpp"
#include "ievm/synth.hpp"

using namespace ievm;

namespace {

EVMModel toy_model() {
  EVMConfig config;
  config.tail_size = 10;
  return batch_fit(synth_blobs(3, 20, 2, 1.0, 12), config);
}

// Scalar reference: evaluates exp(-(d/scale)^shape) for every EV directly.
std::pair<std::string, double> reference(const EVMModel& model,
                                         const std::vector<double>& x, double delta) {
  std::string label = "unknown";
  double best = -1.0;
  std::string best_label;
  for (const auto& [name, cls] : model.classes) {
    for (const auto& ev : cls.evs) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        d2 += (x[i] - ev.anchor[i]) * (x[i] - ev.anchor[i]);
      }
      const double p = std::exp(-std::pow(std::sqrt(d2) / ev.params.scale, ev.params.shape));
      if (p > best) {
        best = p;
        best_label = name;
      }
    }
  }
  if (best >= delta) label = best_label;
  return {label, best};
}

}  // namespace

TEST_CASE("a query on an anchor scores 1 for that class") {
  const auto model = toy_model();
  const auto& ev = model.classes.at("c1").evs[3];
  const auto p = predict(model, ev.anchor, 1.0);
  CHECK(p.label == "c1");
  CHECK(p.score == 1.0);
  CHECK(p.per_class_scores.size() == 3);
}

TEST_CASE("a distant query is unknown") {
  const auto model = toy_model();
  const std::vector<double> far{1e6, -1e6};
  const auto p = predict(model, far, 0.01);
  CHECK(p.is_unknown());
  CHECK(p.score < 0.01);
}

TEST_CASE("empty model predicts unknown") {
  const auto p = predict(EVMModel{}, std::vector<double>{1.0, 2.0}, 0.5);
  CHECK(p.is_unknown());
  CHECK(p.score == 0.0);
}

TEST_CASE("dimension mismatch is an error") {
  const auto model = toy_model();
  CHECK_THROWS(predict(model, std::vector<double>{1.0}, 0.5));
}

TEST_CASE("predict agrees with the scalar reference") {
  const auto model = toy_model();
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-15.0, 15.0);
  for (int q = 0; q < 20; ++q) {
    const std::vector<double> x{u(rng), u(rng)};
    for (double delta : {0.05, 0.5}) {
      const auto p = predict(model, x, delta);
      const auto [label, score] = reference(model, x, delta);
      CHECK(p.label == label);
      CHECK(p.score == doctest::Approx(score).epsilon(1e-12));
    }
  }
}

TEST_CASE("score_matrix") {
  const auto model = toy_model();
  CHECK(score_matrix(model, {}).scores.empty());
  const std::vector<FeatureVector> queries{model.classes.at("c2").evs[0].anchor,
                                           {0.0, 0.0}};
  const auto m = score_matrix(model, queries);
  CHECK(m.classes == std::vector<std::string>{"c0", "c1", "c2"});
  REQUIRE(m.scores.size() == 2);
  CHECK(m.scores[0][2] == 1.0);
  const auto p = predict(model, queries[1], 0.5);
  for (std::size_t c = 0; c < m.classes.size(); ++c) {
    CHECK(m.scores[1][c] == p.per_class_scores.at(m.classes[c]));
  }
}

TEST_CASE("predict leaves the model untouched") {
  const auto model = toy_model();
  const auto copy = model;
  for (int i = 0; i < 10; ++i) predict(model, std::vector<double>{0.1 * i, 1.0}, 0.5);
  CHECK(model == copy);
}
