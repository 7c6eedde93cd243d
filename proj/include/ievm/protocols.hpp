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

#ifndef IEVM_PROTOCOLS_HPP_
#define IEVM_PROTOCOLS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ievm/core.hpp"

namespace ievm {

// 1 - sqrt(2 * n_train / (n_train + n_test)).
double openness(std::size_t n_train_classes, std::size_t n_test_classes);

// Samples are referenced by their index into the source dataset so that a
// stream can be replayed from a manifest.
struct StreamBatch {
  std::size_t epoch = 0;  // 1-based
  std::vector<std::size_t> ids;
  std::vector<LabeledSample> samples;
};

struct ProtocolStream {
  std::vector<StreamBatch> batches;
  std::vector<std::size_t> test_ids;
  std::vector<LabeledSample> test_set;
  std::vector<std::string> known_classes;    // shuffled order of introduction
  std::vector<std::string> unknown_classes;  // sorted
  std::vector<double> openness_schedule;     // one entry per batch
  std::size_t total_classes = 0;

  bool is_unknown_class(const std::string& label) const;
};

struct Protocol1Params {
  double known_fraction = 0.5;
  std::size_t batch_size = 24;
  std::size_t n_epochs = 100;
  std::uint64_t seed = 0;
  // Share of every known class held out for the fixed test set (at least one
  // sample per class).
  double test_fraction = 0.2;
};

// Open world protocol: epoch 1 holds two known classes, each following epoch
// up to |known| - 1 introduces one new known class alongside samples of seen
// classes, later epochs revisit seen classes only.
ProtocolStream protocol1_generate(std::span<const LabeledSample> data,
                                  const Protocol1Params& params);

struct Protocol2Params {
  double known_fraction = 0.7;
  std::size_t classes_per_batch = 56;
  std::size_t test_samples_per_known = 1;
  std::uint64_t seed = 0;
};

// Class-incremental protocol: every known class lands in exactly one batch
// with all its training samples.
ProtocolStream protocol2_generate(std::span<const LabeledSample> data,
                                  const Protocol2Params& params);

// Replaces ids by the corresponding dataset samples (used after loading a
// manifest).
void materialize(ProtocolStream& stream, std::span<const LabeledSample> data);

}  // namespace ievm

#endif  // IEVM_PROTOCOLS_HPP_
