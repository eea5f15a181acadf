// Copyright 2026 The dgbs-clique Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dgbs/encoding.hpp"
#include "dgbs/gaussian.hpp"
#include "dgbs/graph.hpp"
#include "dgbs/probability.hpp"
#include "dgbs/random.hpp"

namespace dgbs {

struct SampleBatch {
  std::string sampler;  // "exact", "uniform" or "oh"
  int modes = 0;
  std::uint64_t seed = 0;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json conditioning = nlohmann::json::object();
  std::vector<NodeSubset> samples;
};

/// Samples are drawn in shards of this many, shard s using
/// Rng(derive_seed(seed, s)), so batches do not depend on the thread count.
inline constexpr std::size_t kShardSize = 1024;

/// Exact collision-free law over a window of total photon numbers,
/// renormalized inside the window.
class ExactSampler {
 public:
  ExactSampler(const GaussianState& s, int k_min, int k_max);
  explicit ExactSampler(CollisionFreeTable table);

  SampleBatch draw(std::size_t count, std::uint64_t seed, int threads = 1) const;

  const CollisionFreeTable& table() const { return table_; }
  /// Renormalized probability of a subset inside the window (0 outside).
  double probability(const NodeSubset& s) const;
  /// Renormalized mass per size k, indexed 0..modes.
  std::vector<double> size_law() const;

 private:
  CollisionFreeTable table_;
  DiscreteSampler sampler_;
};

SampleBatch exact_sampler(const GaussianState& s, int k_min, int k_max, std::size_t count,
                          std::uint64_t seed, int threads = 1);

/// Point mass, flat window, or any explicit law; entries indexed by k.
std::vector<double> flat_size_law(int modes, int k_min, int k_max);

SampleBatch uniform_sampler(int modes, const std::vector<double>& size_law, std::size_t count,
                            std::uint64_t seed, int threads = 1);

/// Law of the number of photon pairs emitted by independent single-mode
/// squeezers with the given tanh r, truncated to [0, n_max] and renormalized.
std::vector<double> squeezed_pair_law(const std::vector<double>& tanh_r, int n_max);

struct OhOptions {
  /// Fixed number of pairs per sample; negative means draw it from
  /// squeezed_pair_law of the encoding, truncated at modes / 2.
  int n_pairs = -1;
  /// Give up on a sample after this many collision rejections.
  std::size_t max_attempts = 1'000'000;
};

/// Pair sampler on a non-negative kernel: each sample draws its pairs i.i.d.
/// with weight B_ij (i < j) or 2 B_ii, and redraws (pair count included)
/// while any mode repeats.
/// The rejection rate is stored in conditioning["rejection_rate"].
SampleBatch oh_sampler(const EncodedExperiment& e, const OhOptions& options, std::size_t count,
                       std::uint64_t seed, int threads = 1);

/// Header line with everything but the samples, then one {"subset":[...]}
/// line per sample.
void write_batch_jsonl(std::ostream& out, const SampleBatch& b);
SampleBatch read_batch_jsonl(std::istream& in);

}  // namespace dgbs
