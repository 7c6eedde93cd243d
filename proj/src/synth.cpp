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

#include "ievm/synth.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace ievm {

std::string blob_label(std::size_t index, std::size_t n_classes) {
  const std::size_t width = std::to_string(n_classes > 0 ? n_classes - 1 : 0).size();
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return "c" + digits;
}

BlobSet generate_blobs(std::size_t n_classes, std::size_t per_class,
                       std::size_t dimension, double spread, std::uint64_t seed,
                       double min_separation) {
  if (n_classes == 0 || per_class == 0 || dimension == 0) {
    throw std::invalid_argument("synth: classes, per-class and dimension must be positive");
  }
  if (!(spread > 0.0) || !(min_separation > 0.0)) {
    throw std::invalid_argument("synth: spread must be positive");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  BlobSet out;
  out.means.assign(n_classes, FeatureVector(dimension));
  for (auto& m : out.means) {
    for (double& v : m) v = normal(rng);
  }
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_classes; ++i) {
    for (std::size_t j = i + 1; j < n_classes; ++j) {
      closest = std::min(closest, distance(out.means[i], out.means[j],
                                           DistanceMetric::kEuclidean));
    }
  }
  const double factor = std::isfinite(closest) && closest > 0.0
                            ? min_separation * spread / closest
                            : min_separation * spread;
  for (auto& m : out.means) {
    for (double& v : m) v *= factor;
  }

  out.samples.reserve(n_classes * per_class);
  for (std::size_t c = 0; c < n_classes; ++c) {
    const std::string label = blob_label(c, n_classes);
    for (std::size_t i = 0; i < per_class; ++i) {
      FeatureVector x(dimension);
      for (std::size_t d = 0; d < dimension; ++d) {
        x[d] = out.means[c][d] + spread * normal(rng);
      }
      out.samples.push_back({std::move(x), label});
    }
  }
  return out;
}

std::vector<LabeledSample> synth_blobs(std::size_t n_classes,
                                       std::size_t per_class,
                                       std::size_t dimension, double spread,
                                       std::uint64_t seed) {
  return generate_blobs(n_classes, per_class, dimension, spread, seed).samples;
}

}  // namespace ievm
