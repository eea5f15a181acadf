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
#include <vector>

#include "dgbs/graph.hpp"
#include "dgbs/random.hpp"

namespace dgbs {

struct SearchConfig {
  int n_iter = 7;
  std::uint64_t seed = 0;
  /// Grow picks a candidate with probability proportional to its weight.
  bool weight_priority = true;
  /// Swap picks its replacement weight-proportionally instead of uniformly.
  bool weighted_swap = false;
};

/// Removes vertices of minimum degree (within the current subgraph), breaking
/// ties by minimum weight and then uniformly at random, until a clique is left.
NodeSubset greedy_shrink(const Graph& g, NodeSubset s, Rng& rng);
NodeSubset greedy_shrink(const Graph& g, const NodeSubset& s, std::uint64_t seed);

/// Vertices outside the clique that are adjacent to every member of it.
NodeSubset grow(const Graph& g, const NodeSubset& clique);

/// n_iter rounds of: add a grow candidate if there is one, otherwise swap a
/// random member for a vertex compatible with the rest. A swap with no
/// candidate leaves the clique unchanged.
NodeSubset local_search(const Graph& g, NodeSubset clique, const SearchConfig& cfg, Rng& rng);
NodeSubset local_search(const Graph& g, const NodeSubset& clique, const SearchConfig& cfg);

struct SampleOutcome {
  int sample_index = 0;
  int initial_size = 0;
  int final_size = 0;
  double final_weight = 0.0;
  bool success = false;
};

struct SuccessReport {
  double rate = 0.0;
  std::vector<SampleOutcome> per_sample;
};

/// Runs greedy_shrink then local_search on each sample. Sample i uses the seed
/// derive_seed(cfg.seed, i), so the result does not depend on `threads`.
/// Success means reaching the target clique's weight (within 1e-9).
SuccessReport success_rate(const Graph& g, const std::vector<NodeSubset>& samples,
                           const NodeSubset& target, const SearchConfig& cfg, int threads = 1);

/// `sample_index;initial_size;final_size;final_weight;success`
void write_outcomes_csv(std::ostream& out, const std::vector<SampleOutcome>& outcomes);

/// Every maximum-weight maximal clique, found by Bron-Kerbosch with pivoting.
/// Limited to 64 nodes; meant for certifying small fixtures.
std::vector<NodeSubset> maximum_weight_cliques(const Graph& g);

/// Largest clique weight in the graph.
double max_clique_weight(const Graph& g);

}  // namespace dgbs
