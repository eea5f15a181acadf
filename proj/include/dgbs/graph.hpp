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

#include <compare>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace dgbs {

/// Sorted, duplicate-free list of node indices. Interpreted as a subgraph or a
/// clique depending on context.
class NodeSubset {
 public:
  NodeSubset() = default;

  /// Members must already be strictly increasing and non-negative.
  explicit NodeSubset(std::vector<int> members);

  /// Sorts the input; duplicates are rejected.
  static NodeSubset from_unsorted(std::vector<int> members);
  static NodeSubset from_mask(std::uint64_t mask);

  std::uint64_t to_mask() const;
  const std::vector<int>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(int node) const;
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  NodeSubset with(int node) const;
  NodeSubset without(int node) const;

  /// Dash-joined indices, e.g. "0-2-5"; empty subsets render as "".
  std::string to_string() const;

  friend bool operator==(const NodeSubset&, const NodeSubset&) = default;
  friend auto operator<=>(const NodeSubset&, const NodeSubset&) = default;

 private:
  std::vector<int> members_;
};

/// Weighted undirected graph. Immutable after construction; the constructor
/// enforces a symmetric, zero-diagonal, finite, non-negative adjacency matrix
/// and finite non-negative node weights.
class Graph {
 public:
  Graph(std::vector<double> node_weights, Eigen::MatrixXd adjacency);

  /// Unit node weights.
  static Graph unweighted(Eigen::MatrixXd adjacency);

  int node_count() const { return static_cast<int>(weights_.size()); }
  double weight(int node) const { return weights_[node]; }
  const std::vector<double>& node_weights() const { return weights_; }
  const Eigen::MatrixXd& adjacency() const { return adjacency_; }
  bool adjacent(int u, int v) const { return adjacency_(u, v) > 0.0; }
  int edge_count() const;
  bool has_uniform_weights() const;

  /// Throws ValidationError when a member is out of range.
  void check_subset(const NodeSubset& s) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::vector<double> weights_;
  Eigen::MatrixXd adjacency_;
};

/// G(M, p) with unit edge and node weights. Pairs (i, j), i < j, are visited
/// in row-major order and each consumes one uniform draw.
Graph erdos_renyi(int node_count, double edge_probability, std::uint64_t seed);

struct PlantedClique {
  Graph graph;
  NodeSubset clique;
};

/// Completes a uniformly random node subset of the given size. Missing edges
/// get weight 1; existing edge weights are kept.
PlantedClique plant_clique(const Graph& g, int size, std::uint64_t seed);

bool is_clique(const Graph& g, const NodeSubset& s);
double clique_weight(const Graph& g, const NodeSubset& s);

/// Reads the JSON schema (`.json`) or the CSV adjacency schema (anything else).
Graph load_graph(const std::filesystem::path& path);
/// Writes JSON for `.json` paths and CSV otherwise. Weights are printed with
/// 17 significant digits so load(save(g)) == g bit for bit.
void save_graph(const Graph& g, const std::filesystem::path& path);

Graph parse_graph_json(std::string_view text);
Graph parse_graph_csv(std::string_view text);
std::string graph_to_json(const Graph& g);
std::string graph_to_csv(const Graph& g);

}  // namespace dgbs
