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

#include "dgbs/probability.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "dgbs/error.hpp"
#include "support/fock_oracle.hpp"
#include "support/test_util.hpp"

using namespace dgbs;
using cplx = std::complex<double>;

namespace {

Eigen::MatrixXd exchange2(double lambda) {
  Eigen::MatrixXd b(2, 2);
  b << 0, lambda, lambda, 0;
  return b;
}

Eigen::MatrixXd complete_graph(int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
  a.diagonal().setZero();
  return a;
}

GaussianState state_for(const Eigen::MatrixXd& b, std::vector<double> gamma = {}) {
  return pure_state_from_encoding(encode_matrix(b, std::move(gamma)));
}

}  // namespace

TEST(probability, two_mode_squeezer_geometric_law) {
  for (int step = 1; step <= 9; ++step) {
    const double lambda = 0.1 * step;
    const auto s = state_for(exchange2(lambda));
    for (int k = 0; k <= 5; ++k) {
      const double want = (1 - lambda * lambda) * std::pow(lambda, 2 * k);
      ASSERT_NEAR(pattern_prob_gbs(s, PhotonPattern{{k, k}}), want, 1e-12);
      ASSERT_NEAR(pattern_prob_dgbs(s, PhotonPattern{{k, k}}), want, 1e-12);
    }
    ASSERT_NEAR(pattern_prob_gbs(s, PhotonPattern{{1, 0}}), 0.0, 1e-15);
    ASSERT_NEAR(pattern_prob_gbs(s, PhotonPattern{{2, 1}}), 0.0, 1e-15);
  }
}

TEST(probability, gbs_rejects_displaced_or_mixed_states) {
  const auto displaced = state_for(exchange2(0.3), {0.2});
  ASSERT_THROW(pattern_prob_gbs(displaced, PhotonPattern{{1, 1}}), ValidationError);
  const auto mixed = apply_loss(state_for(exchange2(0.3)), 0.5);
  ASSERT_THROW(pattern_prob_gbs(mixed, PhotonPattern{{1, 1}}), ValidationError);
  ASSERT_THROW(pattern_prob_dgbs(mixed, PhotonPattern{{1, 1, 0}}), ValidationError);
}

TEST(probability, zero_displacement_collapse) {
  Rng rng(21);
  for (int enc = 0; enc < 10; ++enc) {
    const int m = 2 + static_cast<int>(rng.below(6));
    const auto s = state_for(dgbs::testing::random_symmetric(m, rng, 0.2 + 0.7 * rng.uniform01()));
    const PatternEvaluator eval(s);
    for (int p = 0; p < 10; ++p) {
      const auto n = PhotonPattern{dgbs::testing::random_pattern(m, static_cast<int>(rng.below(9)), rng)};
      const double a = eval(n);
      const double b = eval.gbs(n);
      ASSERT_LE(std::abs(a - b), 1e-10 * std::max(b, 1e-300)) << enc << "/" << p;
    }
  }
}

TEST(probability, coherent_product_statistics) {
  const int m = 3;
  const std::vector<double> gamma{0.1, 0.25, 0.4};
  const auto s = state_for(Eigen::MatrixXd::Zero(m, m), gamma);
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      for (int c = 0; c <= 3; ++c) {
        const std::vector<int> n{a, b, c};
        double want = 1.0;
        for (int i = 0; i < m; ++i) {
          const double mean = gamma[i] * gamma[i];
          want *= std::exp(-mean) * std::pow(mean, n[i]) / std::tgamma(n[i] + 1.0);
        }
        ASSERT_NEAR(pattern_prob_dgbs(s, PhotonPattern{n}), want, 1e-14 + 1e-12 * want);
      }
    }
  }
}

TEST(probability, pure_displaced_states_match_fock_oracle) {
  Rng rng(22);
  for (int trial = 0; trial < 6; ++trial) {
    const int m = 1 + trial % 3;
    const Eigen::MatrixXd b = dgbs::testing::random_symmetric(m, rng, 0.3);
    std::vector<double> g(m);
    for (auto& x : g) x = 0.35 * rng.uniform01();
    const auto s = state_for(b, g);
    const auto fock =
        dgbs::testing::fock_pure_distribution(b.cast<cplx>(), s.disp.head(m), 22);
    const PatternEvaluator eval(s);
    for (const auto& n : fock.patterns(6)) {
      ASSERT_NEAR(eval(PhotonPattern{n}), fock.prob(n), 1e-9) << trial;
    }
  }
}

TEST(probability, mixed_state_path_agrees_with_pure_path) {
  Rng rng(23);
  const Eigen::MatrixXd b = dgbs::testing::random_symmetric(4, rng, 0.6);
  auto s = state_for(b, {0.3, 0.1, 0.2, 0.4});
  auto mixed = s;
  mixed.pure = false;
  const PatternEvaluator a(s), c(mixed);
  for (int t = 0; t < 30; ++t) {
    const PhotonPattern n{dgbs::testing::random_pattern(4, static_cast<int>(rng.below(6)), rng)};
    ASSERT_NEAR(a(n), c(n), 1e-12);
  }
}

TEST(probability, collision_free_tables_match_per_pattern_evaluation) {
  Rng rng(24);
  const int m = 7;
  const Eigen::MatrixXd b = dgbs::testing::random_nonneg_symmetric(m, rng, 0.6);
  std::vector<double> g(m);
  for (auto& x : g) x = 0.4 * rng.uniform01();
  for (double eta : {1.0, 0.6}) {
    const auto s = apply_loss(state_for(b, g), eta);
    const PatternEvaluator eval(s);
    const auto table = CollisionFreeTable::build(s, 0, m);
    ASSERT_EQ(table.masks.size(), std::size_t{1} << m);
    for (std::size_t i = 0; i < table.masks.size(); ++i) {
      const double want = eval.subset(NodeSubset::from_mask(table.masks[i]));
      ASSERT_NEAR(table.probs[i], want, 1e-13 + 1e-11 * want) << eta << " " << i;
    }
    const auto window = CollisionFreeTable::build(s, 2, 3);
    for (auto mask : window.masks) {
      ASSERT_GE(std::popcount(mask), 2);
      ASSERT_LE(std::popcount(mask), 3);
    }
    ASSERT_EQ(window.masks.size(), std::size_t(21 + 35));
  }
}

TEST(probability, total_mass_is_at_most_one) {
  Rng rng(25);
  const auto s = apply_loss(state_for(dgbs::testing::random_nonneg_symmetric(3, rng, 0.5),
                                      {0.3, 0.3, 0.3}),
                            0.7);
  const PatternEvaluator eval(s);
  const auto fock = dgbs::testing::FockDistribution(3, 10);
  double total = 0.0;
  for (const auto& n : fock.patterns(10)) {
    const double p = eval(PhotonPattern{n});
    ASSERT_GE(p, -1e-12);
    ASSERT_LE(p, 1.0);
    total += p;
  }
  ASSERT_LE(total, 1.0 + 1e-9);
  ASSERT_GT(total, 0.99);
}

TEST(subset_distribution, vacuum_slice) {
  const auto s = state_for(complete_graph(4) * 0.2);
  const auto d = subset_distribution(s, 0, false);
  ASSERT_EQ(d.entries.size(), 1u);
  ASSERT_TRUE(d.entries[0].first.empty());
  ASSERT_NEAR(d.entries[0].second, std::exp(-0.5 * log_det_sigma_q(s)), 1e-14);
}

TEST(subset_distribution, complete_graph_pairs_are_uniform) {
  const auto s = state_for(complete_graph(4) * 0.25);
  const auto d = subset_distribution(s, 2);
  ASSERT_EQ(d.entries.size(), 6u);
  ASSERT_TRUE(d.renormalized);
  double total = 0.0;
  for (const auto& [subset, p] : d.entries) {
    ASSERT_NEAR(p, 1.0 / 6.0, 1e-12);
    total += p;
  }
  ASSERT_NEAR(total, 1.0, 1e-10);
  ASSERT_NEAR(shannon_entropy(d), std::log2(6.0), 1e-10);
  ASSERT_TRUE(std::is_sorted(d.entries.begin(), d.entries.end()));
}

TEST(subset_distribution, relabeling_permutes_probabilities) {
  Rng rng(26);
  const int m = 6;
  const Eigen::MatrixXd b = dgbs::testing::random_nonneg_symmetric(m, rng, 0.5);
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[0], perm[4]);
  std::swap(perm[1], perm[2]);
  Eigen::MatrixXd bp(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) bp(i, j) = b(perm[i], perm[j]);
  }
  const auto d = subset_distribution(state_for(b, {0.2}), 3);
  const auto dp = subset_distribution(state_for(bp, {0.2}), 3);
  for (const auto& [subset, p] : dp.entries) {
    std::vector<int> mapped;
    for (int v : subset) mapped.push_back(perm[v]);
    const auto target = NodeSubset::from_unsorted(mapped);
    const auto it = std::find_if(d.entries.begin(), d.entries.end(),
                                 [&](const auto& e) { return e.first == target; });
    ASSERT_NE(it, d.entries.end());
    ASSERT_NEAR(it->second, p, 1e-10);
  }
}

TEST(subset_distribution, guard_trips_on_large_slices) {
  const auto s = vacuum_state(40);
  ASSERT_THROW(subset_distribution(s, 20), ResourceGuardError);
}

TEST(shannon_entropy, edge_cases) {
  SubsetDistribution point;
  point.renormalized = true;
  point.entries.emplace_back(NodeSubset({0}), 1.0);
  ASSERT_EQ(shannon_entropy(point), 0.0);
  SubsetDistribution raw;
  ASSERT_THROW(shannon_entropy(raw), ValidationError);
}

TEST(max_clique_prob, vanishes_without_photons) {
  const Graph g = Graph::unweighted(complete_graph(4));
  const auto e = encode(g, EncodeOptions{1e-6, 0.0, {}});
  ASSERT_LT(max_clique_prob(pure_state_from_encoding(e), NodeSubset({0, 1, 2, 3})), 1e-20);
}

TEST(distribution_csv, format) {
  const Graph g = Graph::unweighted(complete_graph(3));
  const auto d = subset_distribution(state_for(complete_graph(3) * 0.3), 2);
  std::ostringstream out;
  write_distribution_csv(out, d, g);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  ASSERT_EQ(line, "# normalization=conditioned");
  std::getline(in, line);
  ASSERT_EQ(line, "subset;probability;is_clique;weight");
  std::getline(in, line);
  ASSERT_EQ(line.substr(0, 4), "0-1;");
  ASSERT_EQ(line.substr(line.size() - 4), ";1;2");
}

TEST(photon_number_marginal, sums_collision_free_mass) {
  Rng rng(27);
  const auto s = state_for(dgbs::testing::random_nonneg_symmetric(5, rng, 0.5), {0.2});
  const auto marg = photon_number_marginal(s, 5);
  const auto table = CollisionFreeTable::build(s, 0, 5);
  ASSERT_NEAR(std::accumulate(marg.begin(), marg.end(), 0.0), table.raw_mass, 1e-14);
  for (int k = 0; k <= 5; ++k) {
    ASSERT_NEAR(marg[k], subset_distribution(s, k, false).total_raw_mass, 1e-14);
  }
}

TEST(probability, lossy_displaced_states_match_fock_oracle) {
  Rng rng(28);
  for (int trial = 0; trial < 9; ++trial) {
    const int m = 1 + trial % 3;
    const Eigen::MatrixXd b = dgbs::testing::random_symmetric(m, rng, 0.35);
    std::vector<double> g(m), eta(m);
    for (auto& x : g) x = 0.4 * rng.uniform01();
    for (auto& x : eta) x = 0.2 + 0.8 * rng.uniform01();
    const auto pure = state_for(b, g);
    const auto s = apply_loss(pure, eta);
    const auto fock = dgbs::testing::fock_pure_distribution(b.cast<cplx>(), pure.disp.head(m), 22)
                          .after_loss(eta);
    const PatternEvaluator eval(s);
    for (const auto& n : fock.patterns(6)) {
      ASSERT_NEAR(eval(PhotonPattern{n}), fock.prob(n), 1e-9) << trial;
    }
  }
}
