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

#include "ievm/features_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "binary_io.hpp"

namespace ievm {

namespace detail {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace detail

FeatureFormat parse_feature_format(std::string_view name) {
  if (name == "csv") return FeatureFormat::kCsv;
  if (name == "bin" || name == "binary") return FeatureFormat::kBinary;
  throw std::invalid_argument("unknown feature format '" + std::string(name) + "'");
}

FeatureFormat feature_format_for_path(std::string_view path) {
  return path.ends_with(".csv") ? FeatureFormat::kCsv : FeatureFormat::kBinary;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos
                                         ? std::string_view::npos
                                         : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

}  // namespace

std::vector<LabeledSample> parse_features_csv(std::string_view text) {
  std::vector<LabeledSample> samples;
  std::size_t dimension = 0;
  std::size_t row = 0;
  std::size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++row;
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (!header_seen) {
      if (fields.size() < 2 || trim(fields[0]) != "label") {
        throw std::runtime_error("csv row 1: header must be 'label,f0,f1,...'");
      }
      for (std::size_t i = 1; i < fields.size(); ++i) {
        if (trim(fields[i]) != "f" + std::to_string(i - 1)) {
          throw std::runtime_error("csv row 1: expected column 'f" +
                                   std::to_string(i - 1) + "'");
        }
      }
      dimension = fields.size() - 1;
      header_seen = true;
      continue;
    }
    const std::string where = "csv row " + std::to_string(row);
    if (fields.size() != dimension + 1) {
      throw std::runtime_error(where + ": expected " + std::to_string(dimension + 1) +
                               " fields, found " + std::to_string(fields.size()));
    }
    LabeledSample sample;
    sample.label = std::string(trim(fields[0]));
    if (sample.label.empty()) throw std::runtime_error(where + ": empty label");
    sample.features.reserve(dimension);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const std::string_view field = trim(fields[i]);
      double value = 0.0;
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc() || ptr != field.data() + field.size() ||
          !std::isfinite(value)) {
        throw std::runtime_error(where + ": bad value '" + std::string(field) +
                                 "' in column " + std::to_string(i));
      }
      sample.features.push_back(value);
    }
    samples.push_back(std::move(sample));
  }
  if (!header_seen) throw std::runtime_error("csv: missing header");
  return samples;
}

std::string format_features_csv(const std::vector<LabeledSample>& samples) {
  const std::size_t dimension = samples.empty() ? 0 : samples.front().features.size();
  std::string out = "label";
  for (std::size_t i = 0; i < dimension; ++i) out += ",f" + std::to_string(i);
  out += '\n';
  char buf[32];
  for (const auto& s : samples) {
    if (s.label.find_first_of(",\n\r") != std::string::npos) {
      throw std::invalid_argument("label '" + s.label + "' cannot be written to csv");
    }
    if (s.features.size() != dimension) {
      throw std::invalid_argument("csv: inconsistent sample dimension");
    }
    out += s.label;
    for (double v : s.features) {
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::vector<LabeledSample> parse_features_binary(std::string_view bytes) {
  detail::ByteReader in(bytes);
  if (bytes.size() < 4 || bytes.substr(0, 4) != "EVMF") {
    throw std::runtime_error("binary features: bad magic at offset 0");
  }
  in.bytes(4);
  const std::uint8_t version = in.u8();
  if (version != kFeatureFormatVersion) {
    throw std::runtime_error("binary features: unsupported version " +
                             std::to_string(version) + " at offset 4");
  }
  const std::uint32_t dimension = in.u32();
  const std::uint64_t count = in.u64();
  if (dimension == 0) throw std::runtime_error("binary features: zero dimension");
  std::vector<LabeledSample> samples;
  for (std::uint64_t r = 0; r < count; ++r) {
    const std::size_t offset = in.offset();
    try {
      LabeledSample s;
      s.label = in.str();
      s.features.resize(dimension);
      for (auto& v : s.features) v = static_cast<double>(in.f32());
      if (s.label.empty()) throw std::runtime_error("empty label");
      check_finite(s.features, "record");
      samples.push_back(std::move(s));
    } catch (const std::exception& e) {
      throw std::runtime_error("binary features: record " + std::to_string(r) +
                               " at offset " + std::to_string(offset) + ": " +
                               e.what());
    }
  }
  if (in.remaining() != 0) {
    throw std::runtime_error("binary features: trailing bytes at offset " +
                             std::to_string(in.offset()));
  }
  return samples;
}

std::string format_features_binary(const std::vector<LabeledSample>& samples) {
  const std::size_t dimension = samples.empty() ? 1 : samples.front().features.size();
  detail::ByteWriter out;
  out.bytes("EVMF");
  out.u8(kFeatureFormatVersion);
  out.u32(static_cast<std::uint32_t>(dimension));
  out.u64(samples.size());
  for (const auto& s : samples) {
    if (s.features.size() != dimension) {
      throw std::invalid_argument("binary features: inconsistent sample dimension");
    }
    out.str(s.label);
    for (double v : s.features) out.f32(static_cast<float>(v));
  }
  return out.buffer();
}

std::vector<LabeledSample> load_features(const std::string& path,
                                         FeatureFormat format) {
  const std::string data = detail::read_file(path);
  try {
    return format == FeatureFormat::kCsv ? parse_features_csv(data)
                                         : parse_features_binary(data);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_features(const std::vector<LabeledSample>& samples,
                   const std::string& path, FeatureFormat format) {
  detail::write_file(path, format == FeatureFormat::kCsv
                               ? format_features_csv(samples)
                               : format_features_binary(samples));
}

}  // namespace ievm
