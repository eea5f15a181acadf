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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "dgbs/error.hpp"
#include "support/test_util.hpp"

using namespace dgbs;

namespace {

Graph complete(int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
  a.diagonal().setZero();
  return Graph::unweighted(a);
}

bool brute_force_clique(const Graph& g, const NodeSubset& s) {
  for (int u : s) {
    for (int v : s) {
      if (u != v && g.adjacency()(u, v) <= 0.0) return false;
    }
  }
  return true;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST(NodeSubset, validation_and_helpers) {
  ASSERT_THROW(NodeSubset({2, 1}), ValidationError);
  ASSERT_THROW(NodeSubset({1, 1}), ValidationError);
  ASSERT_THROW(NodeSubset({-1}), ValidationError);
  ASSERT_THROW(NodeSubset::from_unsorted({3, 1, 3}), ValidationError);
  const auto s = NodeSubset::from_unsorted({5, 0, 2});
  ASSERT_EQ(s.members(), (std::vector<int>{0, 2, 5}));
  ASSERT_EQ(s.to_string(), "0-2-5");
  ASSERT_EQ(s.to_mask(), 0b100101u);
  ASSERT_EQ(NodeSubset::from_mask(0b100101), s);
  ASSERT_EQ(s.with(3).to_string(), "0-2-3-5");
  ASSERT_EQ(s.without(2).to_string(), "0-5");
  ASSERT_TRUE(s.contains(5));
  ASSERT_FALSE(s.contains(4));
  ASSERT_EQ(NodeSubset().to_string(), "");
}

TEST(Graph, constructor_enforces_invariants) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(3, 3);
  a(0, 1) = 1.0;
  ASSERT_THROW(Graph::unweighted(a), ValidationError);
  a(1, 0) = 1.0;
  ASSERT_NO_THROW(Graph::unweighted(a));
  a(2, 2) = 1.0;
  ASSERT_THROW(Graph::unweighted(a), ValidationError);
  a(2, 2) = 0.0;
  a(0, 2) = a(2, 0) = -1.0;
  ASSERT_THROW(Graph::unweighted(a), ValidationError);
  ASSERT_THROW(Graph({1.0, -2.0}, Eigen::MatrixXd::Zero(2, 2)), ValidationError);
  ASSERT_THROW(Graph({1.0}, Eigen::MatrixXd::Zero(2, 2)), ValidationError);
  ASSERT_THROW(Graph({}, Eigen::MatrixXd::Zero(0, 0)), ValidationError);
}

TEST(erdos_renyi, edge_cases) {
  const auto empty = erdos_renyi(4, 0.0, 1);
  ASSERT_EQ(empty.edge_count(), 0);
  const auto full = erdos_renyi(4, 1.0, 1);
  ASSERT_EQ(full.edge_count(), 6);
  ASSERT_EQ(full, complete(4));
  ASSERT_THROW(erdos_renyi(0, 0.5, 1), ValidationError);
  ASSERT_THROW(erdos_renyi(3, 1.5, 1), ValidationError);
  ASSERT_EQ(erdos_renyi(10, 0.3, 9), erdos_renyi(10, 0.3, 9));
}

TEST(erdos_renyi, density_matches_probability) {
  double edges = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) edges += erdos_renyi(20, 0.2, seed).edge_count();
  ASSERT_NEAR(edges / (1000.0 * 190.0), 0.2, 0.01);
}

TEST(plant_clique, produces_cliques) {
  const auto full = plant_clique(erdos_renyi(4, 0.0, 2), 4, 3);
  ASSERT_EQ(full.graph, complete(4));
  ASSERT_EQ(full.clique, NodeSubset({0, 1, 2, 3}));

  const auto g = erdos_renyi(6, 0.4, 4);
  const auto single = plant_clique(g, 1, 5);
  ASSERT_EQ(single.graph, g);
  ASSERT_EQ(single.clique.size(), 1u);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto p = plant_clique(erdos_renyi(20, 0.2, seed), 8, seed + 100);
    ASSERT_EQ(p.clique.size(), 8u);
    ASSERT_TRUE(is_clique(p.graph, p.clique));
  }
  ASSERT_THROW(plant_clique(g, 0, 1), ValidationError);
  ASSERT_THROW(plant_clique(g, 7, 1), ValidationError);
}

TEST(is_clique, agrees_with_pairwise_check) {
  Eigen::MatrixXd path = Eigen::MatrixXd::Zero(3, 3);
  path(0, 1) = path(1, 0) = path(1, 2) = path(2, 1) = 1.0;
  ASSERT_FALSE(is_clique(Graph::unweighted(path), NodeSubset({0, 2})));
  ASSERT_TRUE(is_clique(complete(4), NodeSubset({0, 1, 2, 3})));
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = erdos_renyi(8, 0.6, trial);
    const auto s = NodeSubset::from_mask(rng.below(256));
    ASSERT_EQ(is_clique(g, s), brute_force_clique(g, s));
  }
  ASSERT_THROW(is_clique(complete(3), NodeSubset({5})), ValidationError);
}

TEST(clique_weight, sums_node_weights) {
  ASSERT_EQ(clique_weight(complete(4), NodeSubset({0, 1, 2, 3})), 4.0);
  ASSERT_EQ(clique_weight(complete(4), NodeSubset()), 0.0);
  Graph g({1.0, 2.0, 3.0}, Eigen::MatrixXd::Zero(3, 3));
  ASSERT_EQ(clique_weight(g, NodeSubset({0, 2})), 4.0);
}

TEST(graph_io, round_trip_is_exact) {
  const auto dir = dgbs::testing::temp_dir("graph_io");
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(8));
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
    std::vector<double> w(m);
    for (int i = 0; i < m; ++i) {
      w[i] = rng.uniform01() * 10.0 / 3.0;
      for (int j = i + 1; j < m; ++j) {
        if (rng.uniform01() < 0.5) a(i, j) = a(j, i) = rng.uniform01() / 7.0;
      }
    }
    const Graph g(w, a);
    for (const char* ext : {".json", ".csv"}) {
      const auto path = dir + "/g" + ext;
      save_graph(g, path);
      ASSERT_EQ(load_graph(path), g) << ext;
    }
  }
  save_graph(complete(4), dir + "/k4.json");
  ASSERT_EQ(load_graph(dir + "/k4.json"), complete(4));
}

TEST(graph_io, reports_locations) {
  const auto dir = dgbs::testing::temp_dir("graph_io_err");
  write_file(dir + "/asym.csv", "0,1,0\n1,0,2\n0,1,0\n");
  try {
    load_graph(dir + "/asym.csv");
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_NE(std::string(e.what()).find("row 1, column 2"), std::string::npos) << e.what();
  }
  write_file(dir + "/neg.csv", "0,-1\n-1,0\n");
  ASSERT_THROW(load_graph(dir + "/neg.csv"), ValidationError);
  write_file(dir + "/bad.csv", "0,x\n1,0\n");
  try {
    load_graph(dir + "/bad.csv");
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_NE(std::string(e.what()).find("row 0, column 1"), std::string::npos) << e.what();
  }
  write_file(dir + "/ragged.csv", "0,1\n1\n");
  ASSERT_THROW(load_graph(dir + "/ragged.csv"), ValidationError);
  write_file(dir + "/negw.json",
             R"({"nodes":[{"id":0,"weight":-1},{"id":1,"weight":1}],"edges":[]})");
  ASSERT_THROW(load_graph(dir + "/negw.json"), ValidationError);
  write_file(dir + "/broken.json", "{\"nodes\": [");
  ASSERT_THROW(load_graph(dir + "/broken.json"), ValidationError);
  try {
    load_graph(dir + "/missing.json");
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_NE(std::string(e.what()).find("missing.json"), std::string::npos);
  }
}

TEST(graph_io, csv_weights_header) {
  const auto g = parse_graph_csv("weights,1,2.5\n0,1\n1,0\n");
  ASSERT_EQ(g.node_weights(), (std::vector<double>{1.0, 2.5}));
  ASSERT_TRUE(g.adjacent(0, 1));
}

TEST(graph_io, demo_fixture_loads) {
  const auto g = load_graph(dgbs::testing::fixture_path("demo6.csv"));
  ASSERT_EQ(g.node_count(), 6);
  ASSERT_EQ(load_graph(dgbs::testing::fixture_path("demo6.json")), g);
}
