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

#include "ievm/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace ievm {

double openness(std::size_t n_train_classes, std::size_t n_test_classes) {
  if (n_train_classes < 1) {
    throw std::invalid_argument("openness: need at least one training class");
  }
  if (n_train_classes > n_test_classes) {
    throw std::invalid_argument("openness: more training than test classes");
  }
  const double train = static_cast<double>(n_train_classes);
  const double test = static_cast<double>(n_test_classes);
  return 1.0 - std::sqrt(2.0 * train / (train + test));
}

bool ProtocolStream::is_unknown_class(const std::string& label) const {
  return std::binary_search(unknown_classes.begin(), unknown_classes.end(), label);
}

namespace {

using Rng = std::mt19937_64;

struct ClassSplit {
  std::vector<std::string> known;
  std::vector<std::string> unknown;
  std::map<std::string, std::vector<std::size_t>> ids;  // per class, shuffled
};

ClassSplit split_classes(std::span<const LabeledSample> data,
                         double known_fraction, Rng& rng) {
  if (!(known_fraction > 0.0 && known_fraction <= 1.0)) {
    throw std::invalid_argument("known_fraction must lie in (0, 1]");
  }
  ClassSplit split;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].label.empty()) {
      throw std::invalid_argument("sample " + std::to_string(i) + " has no label");
    }
    split.ids[data[i].label].push_back(i);
  }
  std::vector<std::string> classes;
  for (auto& [label, ids] : split.ids) {
    classes.push_back(label);
    std::shuffle(ids.begin(), ids.end(), rng);
  }
  std::shuffle(classes.begin(), classes.end(), rng);
  const auto n_known = static_cast<std::size_t>(
      std::llround(known_fraction * static_cast<double>(classes.size())));
  split.known.assign(classes.begin(),
                     classes.begin() + static_cast<long>(std::min(n_known, classes.size())));
  split.unknown.assign(classes.begin() + static_cast<long>(split.known.size()),
                       classes.end());
  std::sort(split.unknown.begin(), split.unknown.end());
  return split;
}

void fill_samples(std::span<const LabeledSample> data, StreamBatch& batch) {
  batch.samples.clear();
  batch.samples.reserve(batch.ids.size());
  for (std::size_t id : batch.ids) batch.samples.push_back(data[id]);
}

void finish(ProtocolStream& stream, std::span<const LabeledSample> data) {
  std::sort(stream.test_ids.begin(), stream.test_ids.end());
  materialize(stream, data);
}

}  // namespace

void materialize(ProtocolStream& stream, std::span<const LabeledSample> data) {
  auto check = [&](std::size_t id) {
    if (id >= data.size()) {
      throw std::out_of_range("stream references sample " + std::to_string(id) +
                              " beyond dataset size " + std::to_string(data.size()));
    }
  };
  for (auto& batch : stream.batches) {
    for (std::size_t id : batch.ids) check(id);
    fill_samples(data, batch);
  }
  stream.test_set.clear();
  for (std::size_t id : stream.test_ids) {
    check(id);
    stream.test_set.push_back(data[id]);
  }
}

ProtocolStream protocol1_generate(std::span<const LabeledSample> data,
                                  const Protocol1Params& params) {
  if (params.batch_size < 2) throw std::invalid_argument("batch_size must be >= 2");
  if (params.n_epochs < 1) throw std::invalid_argument("n_epochs must be >= 1");
  if (!(params.test_fraction >= 0.0 && params.test_fraction < 1.0)) {
    throw std::invalid_argument("test_fraction must lie in [0, 1)");
  }
  Rng rng(params.seed);
  ClassSplit split = split_classes(data, params.known_fraction, rng);
  if (split.known.size() < 2) {
    throw std::invalid_argument("protocol I needs at least two known classes");
  }

  ProtocolStream stream;
  stream.total_classes = split.known.size() + split.unknown.size();
  stream.known_classes = split.known;
  stream.unknown_classes = split.unknown;
  for (const auto& label : split.unknown) {
    const auto& ids = split.ids[label];
    stream.test_ids.insert(stream.test_ids.end(), ids.begin(), ids.end());
  }

  // Unused training ids per known class, in introduction order.
  std::vector<std::vector<std::size_t>> pools;
  for (const auto& label : split.known) {
    const auto& ids = split.ids[label];
    if (ids.size() < 2) {
      throw std::invalid_argument("known class '" + label +
                                  "' needs at least two samples");
    }
    auto held = static_cast<std::size_t>(
        std::llround(params.test_fraction * static_cast<double>(ids.size())));
    held = std::clamp<std::size_t>(held, 1, ids.size() - 1);
    stream.test_ids.insert(stream.test_ids.end(), ids.begin(),
                           ids.begin() + static_cast<long>(held));
    pools.emplace_back(ids.begin() + static_cast<long>(held), ids.end());
  }

  auto fail = [](std::size_t epoch) {
    return std::runtime_error("protocol I: not enough samples to fill epoch " +
                              std::to_string(epoch));
  };
  auto take_from = [&](std::size_t cls, std::size_t count, StreamBatch& batch) {
    auto& pool = pools[cls];
    count = std::min(count, pool.size());
    batch.ids.insert(batch.ids.end(), pool.end() - static_cast<long>(count),
                     pool.end());
    pool.resize(pool.size() - count);
    return count;
  };
  // Uniform draw without replacement over the unused ids of classes [0, seen).
  auto draw_seen = [&](std::size_t seen, std::size_t count, StreamBatch& batch) {
    std::vector<std::pair<std::size_t, std::size_t>> slots;  // (class, pos)
    for (std::size_t c = 0; c < seen; ++c) {
      for (std::size_t p = 0; p < pools[c].size(); ++p) slots.emplace_back(c, p);
    }
    if (slots.size() < count) throw fail(batch.epoch);
    for (std::size_t i = 0; i < count; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, slots.size() - 1);
      std::swap(slots[i], slots[pick(rng)]);
    }
    std::vector<std::vector<bool>> used(seen);
    for (std::size_t c = 0; c < seen; ++c) used[c].assign(pools[c].size(), false);
    for (std::size_t i = 0; i < count; ++i) {
      const auto [c, p] = slots[i];
      batch.ids.push_back(pools[c][p]);
      used[c][p] = true;
    }
    for (std::size_t c = 0; c < seen; ++c) {
      std::vector<std::size_t> rest;
      for (std::size_t p = 0; p < pools[c].size(); ++p) {
        if (!used[c][p]) rest.push_back(pools[c][p]);
      }
      pools[c] = std::move(rest);
    }
  };

  const std::size_t n_known = split.known.size();
  const std::size_t bs = params.batch_size;
  std::size_t seen = 0;
  for (std::size_t epoch = 1; epoch <= params.n_epochs; ++epoch) {
    StreamBatch batch;
    batch.epoch = epoch;
    if (epoch == 1) {
      seen = 2;
      const std::size_t first = take_from(0, (bs + 1) / 2, batch);
      const std::size_t second = take_from(1, bs - first, batch);
      if (first + second < bs) throw fail(epoch);
    } else if (epoch <= n_known - 1) {
      const std::size_t fresh = seen;  // index of the class introduced now
      ++seen;
      const std::size_t share = (bs + seen - 1) / seen;
      const std::size_t taken = take_from(fresh, share, batch);
      if (taken == 0) throw fail(epoch);
      draw_seen(fresh, bs - taken, batch);
    } else {
      draw_seen(seen, bs, batch);
    }
    std::shuffle(batch.ids.begin(), batch.ids.end(), rng);
    stream.openness_schedule.push_back(openness(seen, stream.total_classes));
    stream.batches.push_back(std::move(batch));
  }
  finish(stream, data);
  return stream;
}

ProtocolStream protocol2_generate(std::span<const LabeledSample> data,
                                  const Protocol2Params& params) {
  if (params.classes_per_batch < 1) {
    throw std::invalid_argument("classes_per_batch must be >= 1");
  }
  if (params.test_samples_per_known < 1) {
    throw std::invalid_argument("test_samples_per_known must be >= 1");
  }
  Rng rng(params.seed);
  ClassSplit split = split_classes(data, params.known_fraction, rng);
  if (split.known.empty()) throw std::invalid_argument("protocol II: no known classes");
  if (params.classes_per_batch > split.known.size()) {
    throw std::invalid_argument("classes_per_batch exceeds the number of known classes");
  }

  ProtocolStream stream;
  stream.total_classes = split.known.size() + split.unknown.size();
  stream.known_classes = split.known;
  stream.unknown_classes = split.unknown;
  for (const auto& label : split.unknown) {
    const auto& ids = split.ids[label];
    stream.test_ids.insert(stream.test_ids.end(), ids.begin(), ids.end());
  }

  const std::size_t per_batch = params.classes_per_batch;
  const std::size_t n_known = split.known.size();
  for (std::size_t start = 0; start < n_known; start += per_batch) {
    StreamBatch batch;
    batch.epoch = stream.batches.size() + 1;
    const std::size_t end = std::min(start + per_batch, n_known);
    for (std::size_t c = start; c < end; ++c) {
      const auto& ids = split.ids[split.known[c]];
      std::size_t held = 0;
      if (ids.size() > params.test_samples_per_known) {
        held = params.test_samples_per_known;
      } else if (ids.size() >= 2) {
        held = 1;
      }
      stream.test_ids.insert(stream.test_ids.end(), ids.begin(),
                             ids.begin() + static_cast<long>(held));
      batch.ids.insert(batch.ids.end(), ids.begin() + static_cast<long>(held),
                       ids.end());
    }
    std::shuffle(batch.ids.begin(), batch.ids.end(), rng);
    stream.openness_schedule.push_back(openness(end, stream.total_classes));
    stream.batches.push_back(std::move(batch));
  }
  finish(stream, data);
  return stream;
}

}  // namespace ievm
