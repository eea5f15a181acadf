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

#include "dgbs/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dgbs/error.hpp"
#include "dgbs/random.hpp"

namespace dgbs {

NodeSubset::NodeSubset(std::vector<int> members) : members_(std::move(members)) {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 0) throw ValidationError("NodeSubset: negative node index");
    if (i > 0 && members_[i] <= members_[i - 1]) {
      throw ValidationError("NodeSubset: indices must be strictly increasing");
    }
  }
}

NodeSubset NodeSubset::from_unsorted(std::vector<int> members) {
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw ValidationError("NodeSubset: duplicate node index");
  }
  return NodeSubset(std::move(members));
}

NodeSubset NodeSubset::from_mask(std::uint64_t mask) {
  std::vector<int> m;
  while (mask) {
    m.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return NodeSubset(std::move(m));
}

std::uint64_t NodeSubset::to_mask() const {
  std::uint64_t mask = 0;
  for (int v : members_) {
    if (v >= 64) throw ValidationError("NodeSubset::to_mask: index >= 64");
    mask |= std::uint64_t{1} << v;
  }
  return mask;
}

bool NodeSubset::contains(int node) const {
  return std::binary_search(members_.begin(), members_.end(), node);
}

NodeSubset NodeSubset::with(int node) const {
  if (contains(node)) return *this;
  std::vector<int> m = members_;
  m.insert(std::upper_bound(m.begin(), m.end(), node), node);
  return NodeSubset(std::move(m));
}

NodeSubset NodeSubset::without(int node) const {
  std::vector<int> m;
  m.reserve(members_.size());
  for (int v : members_) {
    if (v != node) m.push_back(v);
  }
  return NodeSubset(std::move(m));
}

std::string NodeSubset::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(members_[i]);
  }
  return out;
}

Graph::Graph(std::vector<double> node_weights, Eigen::MatrixXd adjacency)
    : weights_(std::move(node_weights)), adjacency_(std::move(adjacency)) {
  const auto m = static_cast<Eigen::Index>(weights_.size());
  if (m == 0) throw ValidationError("Graph: node count must be positive");
  if (adjacency_.rows() != m || adjacency_.cols() != m) {
    throw ValidationError("Graph: adjacency is " + std::to_string(adjacency_.rows()) + "x" +
                          std::to_string(adjacency_.cols()) + " but there are " +
                          std::to_string(m) + " node weights");
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    const double w = weights_[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw ValidationError("Graph: node " + std::to_string(i) + " has invalid weight");
    }
    if (adjacency_(i, i) != 0.0) {
      throw ValidationError("Graph: nonzero diagonal at row " + std::to_string(i));
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      const double a = adjacency_(i, j);
      if (!std::isfinite(a) || a < 0.0) {
        throw ValidationError("Graph: invalid adjacency entry at row " + std::to_string(i) +
                              ", column " + std::to_string(j));
      }
      if (a != adjacency_(j, i)) {
        throw ValidationError("Graph: adjacency not symmetric at row " + std::to_string(i) +
                              ", column " + std::to_string(j));
      }
    }
  }
}

Graph Graph::unweighted(Eigen::MatrixXd adjacency) {
  std::vector<double> w(static_cast<std::size_t>(adjacency.rows()), 1.0);
  return Graph(std::move(w), std::move(adjacency));
}

int Graph::edge_count() const {
  int count = 0;
  for (int i = 0; i < node_count(); ++i) {
    for (int j = i + 1; j < node_count(); ++j) count += adjacent(i, j) ? 1 : 0;
  }
  return count;
}

bool Graph::has_uniform_weights() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [&](double w) { return w == weights_.front(); });
}

void Graph::check_subset(const NodeSubset& s) const {
  for (int v : s) {
    if (v >= node_count()) {
      throw ValidationError("node index " + std::to_string(v) + " out of range for a " +
                            std::to_string(node_count()) + "-node graph");
    }
  }
}

bool operator==(const Graph& a, const Graph& b) {
  return a.weights_ == b.weights_ && a.adjacency_.rows() == b.adjacency_.rows() &&
         a.adjacency_ == b.adjacency_;
}

Graph erdos_renyi(int node_count, double edge_probability, std::uint64_t seed) {
  if (node_count <= 0) throw ValidationError("erdos_renyi: node count must be positive");
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
    throw ValidationError("erdos_renyi: edge probability must lie in [0, 1]");
  }
  Rng rng(seed);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(node_count, node_count);
  for (int i = 0; i < node_count; ++i) {
    for (int j = i + 1; j < node_count; ++j) {
      if (rng.uniform01() < edge_probability) a(i, j) = a(j, i) = 1.0;
    }
  }
  return Graph::unweighted(std::move(a));
}

PlantedClique plant_clique(const Graph& g, int size, std::uint64_t seed) {
  const int m = g.node_count();
  if (size < 1 || size > m) {
    throw ValidationError("plant_clique: size " + std::to_string(size) +
                          " outside [1, " + std::to_string(m) + "]");
  }
  Rng rng(seed);
  std::vector<int> nodes(static_cast<std::size_t>(m));
  std::iota(nodes.begin(), nodes.end(), 0);
  // Partial Fisher-Yates: the first `size` slots end up a uniform k-subset.
  for (int i = 0; i < size; ++i) {
    const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::size_t>(m - i));
    std::swap(nodes[static_cast<std::size_t>(i)], nodes[j]);
  }
  nodes.resize(static_cast<std::size_t>(size));
  NodeSubset clique = NodeSubset::from_unsorted(nodes);

  Eigen::MatrixXd a = g.adjacency();
  for (int u : clique) {
    for (int v : clique) {
      if (u != v && a(u, v) == 0.0) a(u, v) = 1.0;
    }
  }
  return {Graph(g.node_weights(), std::move(a)), std::move(clique)};
}

bool is_clique(const Graph& g, const NodeSubset& s) {
  g.check_subset(s);
  const auto& m = s.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (!g.adjacent(m[i], m[j])) return false;
    }
  }
  return true;
}

double clique_weight(const Graph& g, const NodeSubset& s) {
  g.check_subset(s);
  double w = 0.0;
  for (int v : s) w += g.weight(v);
  return w;
}

}  // namespace dgbs
