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

#include "dgbs/encoding.hpp"

#include <gtest/gtest.h>

#include "dgbs/error.hpp"
#include "support/test_util.hpp"

using namespace dgbs;

namespace {

Eigen::MatrixXd complete(int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(n, n);
  a.diagonal().setZero();
  return a;
}

double reconstruction_error(const TakagiResult& t, const Eigen::MatrixXd& b) {
  Eigen::VectorXcd lam(static_cast<Eigen::Index>(t.singular_values.size()));
  for (std::size_t i = 0; i < t.singular_values.size(); ++i) lam(i) = t.singular_values[i];
  const Eigen::MatrixXcd r = t.unitary * lam.asDiagonal() * t.unitary.transpose();
  return (r - b.cast<std::complex<double>>()).norm();
}

}  // namespace

TEST(max_singular_value, closed_forms) {
  ASSERT_NEAR(max_singular_value(complete(4)), 3.0, 1e-12);
  ASSERT_EQ(max_singular_value(Eigen::MatrixXd::Zero(3, 3)), 0.0);
  Eigen::MatrixXd x(2, 2);
  x << 0, 0.7, 0.7, 0;
  ASSERT_NEAR(max_singular_value(x), 0.7, 1e-15);
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 0, 0;
  ASSERT_THROW(max_singular_value(asym), ValidationError);
}

TEST(c_from_lambda_max, scales_top_singular_value) {
  ASSERT_NEAR(c_from_lambda_max(complete(4), 0.5), 1.0 / 6.0, 1e-15);
  ASSERT_LT(c_from_lambda_max(complete(4), 1e-9), 1e-9);
  ASSERT_THROW(c_from_lambda_max(Eigen::MatrixXd::Zero(2, 2), 0.5), ValidationError);
  ASSERT_THROW(c_from_lambda_max(complete(3), 1.0), ValidationError);
  ASSERT_THROW(c_from_lambda_max(complete(3), 0.0), ValidationError);
}

TEST(omega_rescale, formula_and_guard) {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 1, 0;
  const Graph g({1.0, 1.0}, a);
  const auto e = omega_rescale(g, 0.1, 1.0);
  ASSERT_NEAR(e.omega_diag[0], 0.2, 1e-15);
  ASSERT_NEAR(e.omega_diag[1], 0.2, 1e-15);
  ASSERT_NEAR(e.B(0, 1), 0.04, 1e-15);

  const auto plain = omega_rescale(Graph::unweighted(complete(4)), 0.3, 0.0);
  ASSERT_LT((plain.B - 0.09 * complete(4)).cwiseAbs().maxCoeff(), 1e-15);

  const Graph weighted({0.5, 2.0, 1.0}, complete(3));
  const auto lo = omega_rescale(weighted, 0.1, 1.0);
  const auto hi = omega_rescale(weighted, 0.1, 2.0);
  for (int i = 0; i < 3; ++i) ASSERT_GT(hi.omega_diag[i], lo.omega_diag[i]);

  try {
    omega_rescale(Graph::unweighted(complete(4)), 1.0, 0.0);
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_NE(std::string(e.what()).find("3.0"), std::string::npos) << e.what();
  }
}

TEST(takagi_autonne, diagonal_and_exchange) {
  Eigen::MatrixXd d(2, 2);
  d << 0.3, 0, 0, 0.5;
  const auto t = takagi_autonne(d);
  ASSERT_NEAR(t.singular_values[0], 0.5, 1e-15);
  ASSERT_NEAR(t.singular_values[1], 0.3, 1e-15);
  ASSERT_LT(reconstruction_error(t, d), 1e-14);

  Eigen::MatrixXd x(2, 2);
  x << 0, 0.4, 0.4, 0;
  const auto tx = takagi_autonne(x);
  ASSERT_NEAR(tx.singular_values[0], 0.4, 1e-15);
  ASSERT_NEAR(tx.singular_values[1], 0.4, 1e-15);
  ASSERT_LT(reconstruction_error(tx, x), 1e-14);

  Eigen::MatrixXd bad(2, 2);
  bad << 0, 1.2, 1.2, 0;
  ASSERT_THROW(takagi_autonne(bad), ValidationError);
}

TEST(takagi_autonne, random_reconstruction_and_scaling) {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng.below(12));
    const Eigen::MatrixXd b = dgbs::testing::random_symmetric(m, rng, 0.8);
    const auto t = takagi_autonne(b);
    ASSERT_LT(reconstruction_error(t, b), 1e-10);
    const Eigen::MatrixXcd u = t.unitary;
    ASSERT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(m, m)).norm(), 1e-10);
    ASSERT_TRUE(std::is_sorted(t.singular_values.rbegin(), t.singular_values.rend()));

    const double s = 0.2 + 0.8 * rng.uniform01();
    const auto ts = takagi_autonne(s * b);
    ASSERT_LT(reconstruction_error(ts, s * b), 1e-10);
    for (int i = 0; i < m; ++i) ASSERT_NEAR(ts.singular_values[i], s * t.singular_values[i], 1e-12);
  }
}

TEST(squeezing_report, inverse_hyperbolic_tangent) {
  EncodedExperiment e;
  e.tanh_r = {0.0, 0.0};
  auto rep = squeezing_report(e);
  ASSERT_EQ(rep.n_sqz, 0.0);
  ASSERT_EQ(rep.r[0], 0.0);
  e.tanh_r = {std::tanh(1.0)};
  rep = squeezing_report(e);
  ASSERT_NEAR(rep.r[0], 1.0, 1e-14);
  ASSERT_NEAR(rep.n_sqz, std::sinh(1.0) * std::sinh(1.0), 1e-13);
}

TEST(gamma_rescale, products_with_omega) {
  EncodedExperiment e;
  e.omega_diag = {1.0, 1.0, 1.0};
  ASSERT_EQ(gamma_rescale(e, {0.1, 0.2, 0.3}), (std::vector<double>{0.1, 0.2, 0.3}));
  e.omega_diag = {0.5, 0.5, 0.5};
  for (double x : gamma_rescale(e, {0.2, 0.2, 0.2})) ASSERT_NEAR(x, 0.1, 1e-16);
  ASSERT_EQ(gamma_rescale(e, std::vector<double>(6, 0.2)).size(), 6u);
  ASSERT_THROW(gamma_rescale(e, {0.1}), ValidationError);
  ASSERT_THROW(gamma_rescale(e, {0.1, -0.1, 0.1}), ValidationError);

  const Graph g({1.0, 2.0, 3.0}, complete(3));
  const auto enc = encode(g, EncodeOptions{0.5, 0.5, {0.1, 0.2, 0.3}});
  ASSERT_TRUE(std::is_sorted(enc.gamma_rescaled.begin(), enc.gamma_rescaled.end()));
}

TEST(validate_gamma_monotone, cases) {
  const Graph uniform = Graph::unweighted(complete(3));
  ASSERT_TRUE(validate_gamma_monotone(uniform, {0.2, 0.2, 0.2}));
  ASSERT_TRUE(validate_gamma_monotone(uniform, {0.5, 0.1, 0.2}));
  const Graph g({1.0, 2.0}, Eigen::MatrixXd::Zero(2, 2));
  ASSERT_FALSE(validate_gamma_monotone(g, {0.3, 0.1}));
  ASSERT_TRUE(validate_gamma_monotone(g, {0.3, 0.6}));
}

TEST(encode, hits_lambda_max_and_reconstructs) {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = erdos_renyi(10, 0.4, trial);
    if (g.edge_count() == 0) continue;
    const double lambda = 0.05 + 0.9 * rng.uniform01();
    const double alpha = trial % 2 ? 0.0 : 0.7;
    const auto e = encode(g, EncodeOptions{lambda, alpha, {0.3}});
    ASSERT_NEAR(e.tanh_r.front(), lambda, 1e-10);
    ASSERT_NEAR(e.lambda_max, lambda, 1e-10);
    Eigen::VectorXd om = Eigen::Map<const Eigen::VectorXd>(e.omega_diag.data(), 10);
    ASSERT_LT((e.B - om.asDiagonal() * g.adjacency() * om.asDiagonal()).cwiseAbs().maxCoeff(),
              1e-12);
    ASSERT_LT(reconstruction_error(TakagiResult{e.unitary, e.tanh_r}, e.B), 1e-10);
    for (double t : e.tanh_r) {
      ASSERT_GE(t, 0.0);
      ASSERT_LT(t, 1.0);
    }
    if (alpha == 0.0) {
      const double c_eq7 = c_from_lambda_max(g.adjacency(), lambda);
      ASSERT_LT((e.B - c_eq7 * g.adjacency()).cwiseAbs().maxCoeff(), 1e-15);
      ASSERT_NEAR(e.c * e.c, c_eq7, 1e-15);
    }
  }
}
