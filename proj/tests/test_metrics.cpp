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

#include <random>
#include <vector>

#include "ievm/metrics.hpp"

using namespace ievm;

namespace {

std::vector<EvalRecord> hand_case() {
  return {{"a", "a", 0.9}, {"b", "a", 0.8}, {"c", "c", 0.3},
          {"unknown", "a", 0.7}, {"unknown", "b", 0.4}, {"unknown", "c", 0.2}};
}

}  // namespace

TEST_CASE("threshold from three unknown scores") {
  const std::vector<EvalRecord> r{
      {"unknown", "x", 0.9}, {"unknown", "x", 0.5}, {"unknown", "x", 0.1}};
  const double t = derive_threshold(r, 1.0 / 3.0);
  CHECK(t > 0.5);
  CHECK(t <= 0.9);
  CHECK(false_accept_rate(r, t) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("far target of one accepts everything") {
  const auto r = hand_case();
  const double t = derive_threshold(r, 1.0);
  CHECK(t <= 0.2);
  CHECK(false_accept_rate(r, t) == 1.0);
}

TEST_CASE("tied unknown scores collapse to zero acceptance") {
  const std::vector<EvalRecord> r{
      {"unknown", "x", 0.6}, {"unknown", "x", 0.6}, {"unknown", "x", 0.6}, {"k", "k", 0.6}};
  const double t = derive_threshold(r, 0.5);
  CHECK(t > 0.6);
  CHECK(false_accept_rate(r, t) == 0.0);
}

TEST_CASE("threshold errors") {
  const std::vector<EvalRecord> knowns{{"a", "a", 0.9}};
  CHECK_THROWS(derive_threshold(knowns, 0.1));
  CHECK_THROWS(derive_threshold(hand_case(), 0.0));
  CHECK_THROWS(derive_threshold(hand_case(), 1.5));
}

TEST_CASE("six record hand case") {
  const auto r = hand_case();
  const std::vector<double> targets{1.0 / 3.0};
  const auto result = dir_at_far(r, targets, Averaging::kMicro);
  REQUIRE(result.thresholds.size() == 1);
  CHECK(result.thresholds[0] > 0.4);
  CHECK(result.thresholds[0] <= 0.7);
  CHECK(result.dir_values[0] == doctest::Approx(1.0 / 3.0));
  const auto counts = confusion_summary(r, result.thresholds[0]);
  CHECK(counts.known_correct == 1);
  CHECK(counts.known_wrong == 1);
  CHECK(counts.known_rejected == 1);
  CHECK(counts.unknown_accepted == 1);
  CHECK(counts.unknown_rejected == 2);
  CHECK(counts.total() == 6);
  // Macro: class a hit, b miss, c rejected.
  CHECK(dir_at_far(r, targets, Averaging::kMacro).dir_values[0] ==
        doctest::Approx(1.0 / 3.0));
}

TEST_CASE("perfect and hopeless scores") {
  std::vector<EvalRecord> perfect{{"a", "a", 1.0}, {"b", "b", 1.0},
                                  {"unknown", "a", 0.0}, {"unknown", "b", 0.0}};
  const std::vector<double> targets{0.5, 0.1, 0.01};
  for (double dir : dir_at_far(perfect, targets, Averaging::kMicro).dir_values) {
    CHECK(dir == 1.0);
  }
  std::vector<EvalRecord> hopeless{{"a", "a", 0.1}, {"b", "b", 0.1},
                                   {"unknown", "a", 0.9}, {"unknown", "b", 0.9}};
  const std::vector<double> strict{0.1};
  CHECK(dir_at_far(hopeless, strict, Averaging::kMicro).dir_values[0] == 0.0);
}

TEST_CASE("confusion summary of nothing") {
  const auto c = confusion_summary({}, 0.5);
  CHECK(c.total() == 0);
}

TEST_CASE("achieved FAR never exceeds the target") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> count(1, 40), coarse(0, 10);
  std::uniform_real_distribution<double> score(0.0, 1.0), far(0.001, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<EvalRecord> r;
    const int n_known = count(rng), n_unknown = count(rng);
    const bool ties = trial % 2 == 0;
    auto draw = [&] { return ties ? coarse(rng) / 10.0 : score(rng); };
    for (int i = 0; i < n_known; ++i) r.push_back({"k", i % 3 ? "k" : "j", draw()});
    for (int i = 0; i < n_unknown; ++i) r.push_back({"unknown", "k", draw()});
    const double target = far(rng);
    const double t = derive_threshold(r, target);
    CHECK(false_accept_rate(r, t) <= target + 1e-12);
  }
}

TEST_CASE("DIR is monotone in the threshold") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  std::vector<EvalRecord> r;
  for (int i = 0; i < 50; ++i) r.push_back({"k", i % 4 ? "k" : "j", score(rng)});
  double previous = 1.0;
  for (double t = 0.0; t <= 1.0; t += 0.05) {
    const double dir = dir_at_threshold(r, t, Averaging::kMicro);
    CHECK(dir <= previous);
    previous = dir;
  }
}

TEST_CASE("averaging names") {
  CHECK(parse_averaging("micro") == Averaging::kMicro);
  CHECK(parse_averaging(to_string(Averaging::kMacro)) == Averaging::kMacro);
  CHECK_THROWS(parse_averaging("weighted"));
}
