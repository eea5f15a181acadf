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

#include "dgbs/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <bit>
#include <istream>
#include <optional>
#include <ostream>

#include "dgbs/error.hpp"
#include "dgbs/parallel.hpp"
#include "dgbs/random.hpp"

namespace dgbs {

namespace {

// Fills `count` samples shard by shard; draw_one(rng) produces one sample.
template <class DrawOne>
std::vector<NodeSubset> sharded(std::size_t count, std::uint64_t seed, int threads,
                                DrawOne&& draw_one) {
  std::vector<NodeSubset> out(count);
  const std::size_t shards = (count + kShardSize - 1) / kShardSize;
  parallel_for(shards, threads, [&](std::size_t s) {
    Rng rng(derive_seed(seed, s));
    const std::size_t end = std::min(count, (s + 1) * kShardSize);
    for (std::size_t i = s * kShardSize; i < end; ++i) out[i] = draw_one(rng);
  });
  return out;
}

void check_law(const std::vector<double>& law, int modes, const char* who) {
  if (static_cast<int>(law.size()) > modes + 1) {
    throw ValidationError(std::string(who) + ": size law longer than modes + 1");
  }
  double total = 0.0;
  for (double p : law) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw ValidationError(std::string(who) + ": size law entries must be finite and >= 0");
    }
    total += p;
  }
  if (total <= 0.0) throw ValidationError(std::string(who) + ": size law has zero mass");
}

CollisionFreeTable with_mass(CollisionFreeTable t) {
  double total = 0.0;
  for (double p : t.probs) total += p;
  if (!(total > 0.0)) {
    throw NumericalError("exact_sampler: zero probability mass in the window [" +
                         std::to_string(t.k_min) + ", " + std::to_string(t.k_max) + "]");
  }
  return t;
}

}  // namespace

ExactSampler::ExactSampler(const GaussianState& s, int k_min, int k_max)
    : ExactSampler(CollisionFreeTable::build(s, k_min, k_max)) {}

ExactSampler::ExactSampler(CollisionFreeTable table)
    : table_(with_mass(std::move(table))), sampler_(table_.probs) {}

SampleBatch ExactSampler::draw(std::size_t count, std::uint64_t seed, int threads) const {
  SampleBatch b;
  b.sampler = "exact";
  b.modes = table_.modes;
  b.seed = seed;
  b.parameters = {{"count", count}};
  b.conditioning = {{"k_min", table_.k_min},
                    {"k_max", table_.k_max},
                    {"window_mass", table_.raw_mass},
                    {"renormalized", true}};
  b.samples = sharded(count, seed, threads, [&](Rng& rng) {
    return NodeSubset::from_mask(table_.masks[sampler_(rng)]);
  });
  return b;
}

double ExactSampler::probability(const NodeSubset& s) const {
  const auto mask = s.to_mask();
  const auto it = std::lower_bound(table_.masks.begin(), table_.masks.end(), mask);
  if (it == table_.masks.end() || *it != mask) return 0.0;
  return table_.probs[static_cast<std::size_t>(it - table_.masks.begin())] / sampler_.total();
}

std::vector<double> ExactSampler::size_law() const {
  std::vector<double> law(static_cast<std::size_t>(table_.modes) + 1, 0.0);
  for (std::size_t i = 0; i < table_.masks.size(); ++i) {
    law[static_cast<std::size_t>(std::popcount(table_.masks[i]))] += table_.probs[i];
  }
  for (double& p : law) p /= sampler_.total();
  return law;
}

SampleBatch exact_sampler(const GaussianState& s, int k_min, int k_max, std::size_t count,
                          std::uint64_t seed, int threads) {
  return ExactSampler(s, k_min, k_max).draw(count, seed, threads);
}

std::vector<double> flat_size_law(int modes, int k_min, int k_max) {
  if (k_min < 0 || k_max > modes || k_min > k_max) {
    throw ValidationError("flat_size_law: need 0 <= k_min <= k_max <= modes");
  }
  std::vector<double> law(static_cast<std::size_t>(modes) + 1, 0.0);
  for (int k = k_min; k <= k_max; ++k) law[static_cast<std::size_t>(k)] = 1.0;
  return law;
}

SampleBatch uniform_sampler(int modes, const std::vector<double>& size_law, std::size_t count,
                            std::uint64_t seed, int threads) {
  if (modes < 1 || modes > 64) throw ValidationError("uniform_sampler: need 1 <= modes <= 64");
  check_law(size_law, modes, "uniform_sampler");
  const DiscreteSampler sizes(size_law);
  SampleBatch b;
  b.sampler = "uniform";
  b.modes = modes;
  b.seed = seed;
  b.parameters = {{"count", count}, {"size_law", size_law}};
  b.conditioning = {{"renormalized", true}};
  b.samples = sharded(count, seed, threads, [&](Rng& rng) {
    const auto k = sizes(rng);
    // Partial Fisher-Yates over the node labels.
    std::vector<int> nodes(static_cast<std::size_t>(modes));
    for (int i = 0; i < modes; ++i) nodes[static_cast<std::size_t>(i)] = i;
    for (std::size_t i = 0; i < k; ++i) {
      std::swap(nodes[i], nodes[i + rng.below(nodes.size() - i)]);
    }
    nodes.resize(k);
    return NodeSubset::from_unsorted(nodes);
  });
  return b;
}

std::vector<double> squeezed_pair_law(const std::vector<double>& tanh_r, int n_max) {
  if (n_max < 0) throw ValidationError("squeezed_pair_law: n_max must be >= 0");
  const auto len = static_cast<std::size_t>(n_max) + 1;
  std::vector<double> law(len, 0.0);
  law[0] = 1.0;
  for (double t : tanh_r) {
    if (!(std::abs(t) < 1.0)) throw ValidationError("squeezed_pair_law: |tanh r| must be < 1");
    std::vector<double> single(len);
    single[0] = std::sqrt(1.0 - t * t);
    for (std::size_t n = 1; n < len; ++n) {
      single[n] = single[n - 1] * t * t * static_cast<double>(2 * n - 1) /
                  static_cast<double>(2 * n);
    }
    std::vector<double> next(len, 0.0);
    for (std::size_t a = 0; a < len; ++a) {
      for (std::size_t b = 0; a + b < len; ++b) next[a + b] += law[a] * single[b];
    }
    law = std::move(next);
  }
  double total = 0.0;
  for (double p : law) total += p;
  for (double& p : law) p /= total;
  return law;
}

SampleBatch oh_sampler(const EncodedExperiment& e, const OhOptions& options, std::size_t count,
                       std::uint64_t seed, int threads) {
  const int m = e.modes();
  if (m < 1 || m > 64) throw ValidationError("oh_sampler: need 1 <= modes <= 64");
  if (options.n_pairs > m / 2) {
    throw ValidationError("oh_sampler: n_pairs " + std::to_string(options.n_pairs) +
                          " cannot fit collision-free in " + std::to_string(m) + " modes");
  }
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> weights;
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double b = e.B(i, j);
      if (b < 0.0) throw ValidationError("oh_sampler: kernel has negative entries");
      pairs.emplace_back(i, j);
      weights.push_back(i == j ? 2.0 * b : b);
    }
  }
  if (std::all_of(weights.begin(), weights.end(), [](double w) { return w == 0.0; })) {
    throw ValidationError("oh_sampler: kernel is all zero");
  }
  const DiscreteSampler pair_sampler(weights);

  std::optional<DiscreteSampler> n_sampler;
  if (options.n_pairs < 0) {
    if (e.tanh_r.empty()) throw ValidationError("oh_sampler: encoding has no squeezing data");
    n_sampler.emplace(squeezed_pair_law(e.tanh_r, m / 2));
  }

  const std::size_t shards = (count + kShardSize - 1) / kShardSize;
  std::vector<std::size_t> attempts(shards, 0), rejections(shards, 0);
  auto draw_one = [&](Rng& rng, std::size_t shard) {
    // A rejected draw is redrawn whole, pair count included, so the output is
    // the collision-free conditional of the full two-stage process.
    int n = options.n_pairs;
    for (std::size_t attempt = 0; attempt < options.max_attempts; ++attempt) {
      ++attempts[shard];
      if (n_sampler) n = static_cast<int>((*n_sampler)(rng));
      std::uint64_t mask = 0;
      bool collided = false;
      for (int p = 0; p < n && !collided; ++p) {
        const auto [i, j] = pairs[pair_sampler(rng)];
        const std::uint64_t bits = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
        collided = i == j || (mask & bits) != 0;
        mask |= bits;
      }
      if (!collided) return NodeSubset::from_mask(mask);
      ++rejections[shard];
    }
    throw ResourceGuardError("oh_sampler: no collision-free draw after " +
                             std::to_string(options.max_attempts) + " attempts");
  };

  SampleBatch b;
  b.sampler = "oh";
  b.modes = m;
  b.seed = seed;
  b.samples.resize(count);
  parallel_for(shards, threads, [&](std::size_t s) {
    Rng rng(derive_seed(seed, s));
    const std::size_t end = std::min(count, (s + 1) * kShardSize);
    for (std::size_t i = s * kShardSize; i < end; ++i) b.samples[i] = draw_one(rng, s);
  });
  std::size_t total_attempts = 0, total_rejections = 0;
  for (std::size_t s = 0; s < shards; ++s) {
    total_attempts += attempts[s];
    total_rejections += rejections[s];
  }
  b.parameters = {{"count", count},
                  {"n_pairs", options.n_pairs < 0 ? nlohmann::json("squeezed_pair_law")
                                                  : nlohmann::json(options.n_pairs)},
                  {"lambda_max", e.lambda_max}};
  b.conditioning = {
      {"collision_free", true},
      {"attempts", total_attempts},
      {"rejection_rate", total_attempts ? static_cast<double>(total_rejections) /
                                              static_cast<double>(total_attempts)
                                        : 0.0}};
  return b;
}

void write_batch_jsonl(std::ostream& out, const SampleBatch& b) {
  nlohmann::json header = {{"sampler", b.sampler},     {"modes", b.modes},
                           {"seed", b.seed},           {"count", b.samples.size()},
                           {"parameters", b.parameters}, {"conditioning", b.conditioning}};
  out << nlohmann::json{{"header", header}}.dump() << '\n';
  for (const auto& s : b.samples) {
    out << nlohmann::json{{"subset", std::vector<int>(s.begin(), s.end())}}.dump() << '\n';
  }
}

SampleBatch read_batch_jsonl(std::istream& in) {
  SampleBatch b;
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("batch file: missing header line");
  try {
    const auto h = nlohmann::json::parse(line).at("header");
    b.sampler = h.at("sampler").get<std::string>();
    b.modes = h.at("modes").get<int>();
    b.seed = h.at("seed").get<std::uint64_t>();
    b.parameters = h.at("parameters");
    b.conditioning = h.at("conditioning");
    int line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      auto nodes = nlohmann::json::parse(line).at("subset").get<std::vector<int>>();
      for (int v : nodes) {
        if (v < 0 || v >= b.modes) {
          throw ValidationError("batch file line " + std::to_string(line_no) +
                                ": node index out of range");
        }
      }
      b.samples.push_back(NodeSubset::from_unsorted(std::move(nodes)));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ValidationError(std::string("batch file: ") + ex.what());
  }
  return b;
}

}  // namespace dgbs
