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

#include "ievm/model_io.hpp"

#include <stdexcept>

#include "binary_io.hpp"

namespace ievm {

namespace {

constexpr std::string_view kMagic = "IEVM";

void write_doubles(detail::ByteWriter& out, const std::vector<double>& values) {
  out.u64(values.size());
  for (double v : values) out.f64(v);
}

std::vector<double> read_doubles(detail::ByteReader& in, std::size_t limit) {
  const std::uint64_t n = in.u64();
  if (n > limit) {
    throw std::runtime_error("model: implausible array length " + std::to_string(n) +
                             " at offset " + std::to_string(in.offset()));
  }
  std::vector<double> out(n);
  for (double& v : out) v = in.f64();
  return out;
}

}  // namespace

std::string serialize_model(const EVMModel& model) {
  detail::ByteWriter out;
  out.bytes(kMagic);
  out.u32(kModelFormatVersion);

  const EVMConfig& c = model.config;
  out.u64(c.tail_size);
  out.f64(c.distance_multiplier);
  out.u8(static_cast<std::uint8_t>(c.metric));
  out.u8(c.budget ? 1 : 0);
  out.u64(c.budget.value_or(0));
  out.f64(c.rejection_threshold);
  out.f64(c.coverage_threshold);
  out.f64(c.bisection_tolerance);
  out.f64(c.shape_cap);

  out.u64(model.dimension);
  out.u64(model.epoch);
  out.u64(model.classes.size());
  for (const auto& [label, cls] : model.classes) {
    out.str(label);
    out.u64(cls.evs.size());
    for (const auto& ev : cls.evs) {
      for (double v : ev.anchor) out.f64(v);
      out.f64(ev.params.shape);
      out.f64(ev.params.scale);
      out.f64(ev.params.max_tail_distance);
      write_doubles(out, ev.tail);
    }
    write_doubles(out, cls.coverage_sums);
  }
  const std::uint64_t checksum = detail::fnv1a(out.buffer());
  out.u64(checksum);
  return out.buffer();
}

EVMModel deserialize_model(std::string_view bytes) {
  if (bytes.size() < 4 || bytes.substr(0, 4) != kMagic) {
    throw std::runtime_error("model: bad magic");
  }
  if (bytes.size() < 16) throw std::runtime_error("model: truncated file");
  detail::ByteReader in(bytes);
  in.bytes(4);
  const std::uint32_t version = in.u32();
  if (version != kModelFormatVersion) {
    throw std::runtime_error("model: unsupported format version " +
                             std::to_string(version));
  }
  const std::string_view payload = bytes.substr(0, bytes.size() - 8);
  detail::ByteReader tail(bytes.substr(bytes.size() - 8));
  if (detail::fnv1a(payload) != tail.u64()) {
    throw std::runtime_error("model: checksum mismatch (file corrupted)");
  }
  in = detail::ByteReader(payload);
  in.bytes(8);

  EVMModel model;
  EVMConfig& c = model.config;
  c.tail_size = in.u64();
  c.distance_multiplier = in.f64();
  const std::uint8_t metric = in.u8();
  if (metric > static_cast<std::uint8_t>(DistanceMetric::kCosine)) {
    throw std::runtime_error("model: unknown metric id " + std::to_string(metric));
  }
  c.metric = static_cast<DistanceMetric>(metric);
  const bool has_budget = in.u8() != 0;
  const std::uint64_t budget = in.u64();
  if (has_budget) c.budget = budget;
  c.rejection_threshold = in.f64();
  c.coverage_threshold = in.f64();
  c.bisection_tolerance = in.f64();
  c.shape_cap = in.f64();
  c.validate();

  model.dimension = in.u64();
  model.epoch = in.u64();
  const std::uint64_t n_classes = in.u64();
  const std::size_t limit = bytes.size() / 8;
  for (std::uint64_t k = 0; k < n_classes; ++k) {
    std::string label = in.str();
    ClassModel cls;
    const std::uint64_t n_evs = in.u64();
    if (n_evs > limit) throw std::runtime_error("model: implausible EV count");
    for (std::uint64_t e = 0; e < n_evs; ++e) {
      ExtremeVector ev;
      ev.label = label;
      ev.anchor.resize(model.dimension);
      for (double& v : ev.anchor) v = in.f64();
      ev.params.shape = in.f64();
      ev.params.scale = in.f64();
      ev.params.max_tail_distance = in.f64();
      ev.tail = read_doubles(in, limit);
      cls.evs.push_back(std::move(ev));
    }
    cls.coverage_sums = read_doubles(in, limit);
    if (cls.coverage_sums.size() != cls.evs.size()) {
      throw std::runtime_error("model: coverage sums not aligned for class '" +
                               label + "'");
    }
    model.classes.emplace(std::move(label), std::move(cls));
  }
  if (in.remaining() != 0) {
    throw std::runtime_error("model: trailing bytes at offset " +
                             std::to_string(in.offset()));
  }
  return model;
}

void save_model(const EVMModel& model, const std::string& path) {
  detail::write_file(path, serialize_model(model));
}

EVMModel load_model(const std::string& path) {
  try {
    return deserialize_model(detail::read_file(path));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace ievm
