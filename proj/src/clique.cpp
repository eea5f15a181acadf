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

#include "dgbs/clique.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "dgbs/error.hpp"
#include "dgbs/parallel.hpp"

namespace dgbs {

namespace {

constexpr double kWeightTol = 1e-9;

void require_clique(const Graph& g, const NodeSubset& s, const char* who) {
  if (!is_clique(g, s)) throw ValidationError(std::string(who) + ": input is not a clique");
}

int pick_weighted(const Graph& g, const std::vector<int>& items, Rng& rng) {
  std::vector<double> w;
  w.reserve(items.size());
  double total = 0.0;
  for (int v : items) {
    w.push_back(g.weight(v));
    total += g.weight(v);
  }
  // All-zero weights fall back to a uniform pick.
  if (!(total > 0.0)) return items[rng.below(items.size())];
  return items[DiscreteSampler(w)(rng)];
}

}  // namespace

NodeSubset greedy_shrink(const Graph& g, NodeSubset s, Rng& rng) {
  g.check_subset(s);
  while (!is_clique(g, s)) {
    const auto& members = s.members();
    int min_degree = std::numeric_limits<int>::max();
    std::vector<int> degree(members.size(), 0);
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = 0; b < members.size(); ++b) {
        if (a != b && g.adjacent(members[a], members[b])) ++degree[a];
      }
      min_degree = std::min(min_degree, degree[a]);
    }
    double min_weight = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < members.size(); ++a) {
      if (degree[a] == min_degree) min_weight = std::min(min_weight, g.weight(members[a]));
    }
    std::vector<int> lightest;
    for (std::size_t a = 0; a < members.size(); ++a) {
      if (degree[a] == min_degree && g.weight(members[a]) == min_weight) {
        lightest.push_back(members[a]);
      }
    }
    const int victim = lightest.size() == 1 ? lightest[0] : lightest[rng.below(lightest.size())];
    s = s.without(victim);
  }
  return s;
}

NodeSubset greedy_shrink(const Graph& g, const NodeSubset& s, std::uint64_t seed) {
  Rng rng(seed);
  return greedy_shrink(g, s, rng);
}

NodeSubset grow(const Graph& g, const NodeSubset& clique) {
  require_clique(g, clique, "grow");
  std::vector<int> out;
  for (int v = 0; v < g.node_count(); ++v) {
    if (clique.contains(v)) continue;
    bool all = true;
    for (int u : clique) {
      if (!g.adjacent(u, v)) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(v);
  }
  return NodeSubset(std::move(out));
}

NodeSubset local_search(const Graph& g, NodeSubset clique, const SearchConfig& cfg, Rng& rng) {
  if (cfg.n_iter < 0) throw ValidationError("local_search: n_iter must be non-negative");
  require_clique(g, clique, "local_search");
  for (int iter = 0; iter < cfg.n_iter; ++iter) {
    const NodeSubset candidates = grow(g, clique);
    if (!candidates.empty()) {
      const auto& c = candidates.members();
      const int v = cfg.weight_priority ? pick_weighted(g, c, rng) : c[rng.below(c.size())];
      clique = clique.with(v);
      continue;
    }
    if (clique.empty()) continue;
    const int out = clique.members()[rng.below(clique.size())];
    const NodeSubset rest = clique.without(out);
    std::vector<int> swap_in;
    for (int v : grow(g, rest)) {
      if (v != out) swap_in.push_back(v);
    }
    if (swap_in.empty()) continue;
    const int in = cfg.weighted_swap ? pick_weighted(g, swap_in, rng)
                                     : swap_in[rng.below(swap_in.size())];
    clique = rest.with(in);
  }
  return clique;
}

NodeSubset local_search(const Graph& g, const NodeSubset& clique, const SearchConfig& cfg) {
  Rng rng(cfg.seed);
  return local_search(g, clique, cfg, rng);
}

SuccessReport success_rate(const Graph& g, const std::vector<NodeSubset>& samples,
                           const NodeSubset& target, const SearchConfig& cfg, int threads) {
  if (samples.empty()) throw ValidationError("success_rate: empty batch");
  const double target_weight = clique_weight(g, target);
  SuccessReport report;
  report.per_sample.resize(samples.size());

  auto run = [&](std::size_t i) {
    Rng rng(derive_seed(cfg.seed, i));
    const NodeSubset shrunk = greedy_shrink(g, samples[i], rng);
    const NodeSubset found = local_search(g, shrunk, cfg, rng);
    SampleOutcome& o = report.per_sample[i];
    o.sample_index = static_cast<int>(i);
    o.initial_size = static_cast<int>(samples[i].size());
    o.final_size = static_cast<int>(found.size());
    o.final_weight = clique_weight(g, found);
    o.success = std::abs(o.final_weight - target_weight) <= kWeightTol;
  };

  const auto n = samples.size();
  parallel_for(n, threads, run);
  std::size_t hits = 0;
  for (const auto& o : report.per_sample) hits += o.success ? 1 : 0;
  report.rate = static_cast<double>(hits) / static_cast<double>(n);
  return report;
}

void write_outcomes_csv(std::ostream& out, const std::vector<SampleOutcome>& outcomes) {
  out << "sample_index;initial_size;final_size;final_weight;success\n";
  char buf[40];
  for (const auto& o : outcomes) {
    std::snprintf(buf, sizeof(buf), "%.17g", o.final_weight);
    out << o.sample_index << ';' << o.initial_size << ';' << o.final_size << ';' << buf << ';'
        << (o.success ? 1 : 0) << '\n';
  }
}

namespace {

struct BronKerbosch {
  const Graph& g;
  std::vector<std::uint64_t> nbr;
  double best = -1.0;
  std::vector<std::uint64_t> best_sets;

  double weight(std::uint64_t s) const {
    double w = 0.0;
    for (; s; s &= s - 1) w += g.weight(std::countr_zero(s));
    return w;
  }

  void run(std::uint64_t r, std::uint64_t p, std::uint64_t x) {
    if (p == 0 && x == 0) {
      const double w = weight(r);
      if (w > best + kWeightTol) {
        best = w;
        best_sets.clear();
      }
      if (std::abs(w - best) <= kWeightTol) best_sets.push_back(r);
      return;
    }
    // Prune when even taking all of P cannot reach the best weight.
    if (weight(r) + weight(p) < best - kWeightTol) return;
    const std::uint64_t px = p | x;
    int pivot = std::countr_zero(px);
    int best_cover = -1;
    for (std::uint64_t u = px; u; u &= u - 1) {
      const int v = std::countr_zero(u);
      const int cover = std::popcount(p & nbr[v]);
      if (cover > best_cover) {
        best_cover = cover;
        pivot = v;
      }
    }
    for (std::uint64_t cand = p & ~nbr[pivot]; cand; cand &= cand - 1) {
      const int v = std::countr_zero(cand);
      const std::uint64_t bit = std::uint64_t{1} << v;
      run(r | bit, p & nbr[v], x & nbr[v]);
      p &= ~bit;
      x |= bit;
    }
  }
};

}  // namespace

std::vector<NodeSubset> maximum_weight_cliques(const Graph& g) {
  const int m = g.node_count();
  if (m > 64) throw ResourceGuardError("maximum_weight_cliques: more than 64 nodes");
  BronKerbosch bk{g, std::vector<std::uint64_t>(static_cast<std::size_t>(m), 0), -1.0, {}};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i != j && g.adjacent(i, j)) bk.nbr[i] |= std::uint64_t{1} << j;
    }
  }
  const std::uint64_t all = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  bk.run(0, all, 0);
  std::vector<NodeSubset> out;
  for (auto s : bk.best_sets) out.push_back(NodeSubset::from_mask(s));
  std::sort(out.begin(), out.end());
  return out;
}

double max_clique_weight(const Graph& g) {
  const auto cliques = maximum_weight_cliques(g);
  return cliques.empty() ? 0.0 : clique_weight(g, cliques.front());
}

}  // namespace dgbs
