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

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "dgbs/error.hpp"

namespace dgbs {

namespace {

constexpr double kSymmetryTol = 1e-12;

void require_symmetric(const Eigen::MatrixXd& a, const char* who) {
  if (a.rows() != a.cols()) throw ValidationError(std::string(who) + ": matrix is not square");
  if (!a.allFinite()) throw ValidationError(std::string(who) + ": non-finite entry");
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      if (std::abs(a(i, j) - a(j, i)) > kSymmetryTol) {
        throw ValidationError(std::string(who) + ": matrix not symmetric at row " +
                              std::to_string(i) + ", column " + std::to_string(j));
      }
    }
  }
}

std::vector<double> broadcast_gamma(const std::vector<double>& gamma, int m) {
  if (gamma.empty()) return std::vector<double>(static_cast<std::size_t>(m), 0.0);
  if (gamma.size() == 1) return std::vector<double>(static_cast<std::size_t>(m), gamma[0]);
  if (static_cast<int>(gamma.size()) != m) {
    throw ValidationError("gamma has " + std::to_string(gamma.size()) + " entries for " +
                          std::to_string(m) + " nodes");
  }
  return gamma;
}

}  // namespace

double max_singular_value(const Eigen::MatrixXd& a) {
  require_symmetric(a, "max_singular_value");
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double c_from_lambda_max(const Eigen::MatrixXd& a, double lambda_max) {
  if (!(lambda_max > 0.0 && lambda_max < 1.0)) {
    throw ValidationError("lambda_max must lie in (0, 1)");
  }
  const double s = max_singular_value(a);
  if (s == 0.0) throw ValidationError("c_from_lambda_max: matrix has no nonzero singular value");
  return lambda_max / s;
}

EncodedExperiment omega_rescale(const Graph& g, double c, double alpha) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("omega_rescale: c must be positive");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("omega_rescale: alpha must be non-negative");
  }
  const int m = g.node_count();
  EncodedExperiment e;
  e.c = c;
  e.alpha = alpha;
  e.omega_diag.resize(static_cast<std::size_t>(m));
  Eigen::VectorXd omega(m);
  for (int i = 0; i < m; ++i) {
    e.omega_diag[i] = c * (1.0 + alpha * g.weight(i));
    omega(i) = e.omega_diag[i];
  }
  e.B = omega.asDiagonal() * g.adjacency() * omega.asDiagonal();
  const double s = max_singular_value(e.B);
  if (s >= 1.0) {
    throw ValidationError("omega_rescale: B has top singular value " + std::to_string(s) +
                          " >= 1 and cannot be embedded");
  }
  e.lambda_max = s;
  return e;
}

TakagiResult takagi_autonne(const Eigen::MatrixXd& b) {
  require_symmetric(b, "takagi_autonne");
  const Eigen::Index m = b.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::MatrixXd& q = es.eigenvectors();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return std::abs(lam(x)) > std::abs(lam(y));
  });

  TakagiResult out;
  out.unitary.resize(m, m);
  out.singular_values.resize(static_cast<std::size_t>(m));
  const std::complex<double> i_unit(0.0, 1.0);
  for (Eigen::Index k = 0; k < m; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    const double v = lam(src);
    if (std::abs(v) >= 1.0) {
      throw ValidationError("takagi_autonne: singular value " + std::to_string(std::abs(v)) +
                            " >= 1 is unphysical");
    }
    out.singular_values[static_cast<std::size_t>(k)] = std::abs(v);
    // (i q)(i q)^T = -q q^T absorbs the sign of a negative eigenvalue.
    const std::complex<double> phase = v < 0.0 ? i_unit : std::complex<double>(1.0);
    out.unitary.col(k) = q.col(src).cast<std::complex<double>>() * phase;
  }
  return out;
}

SqueezingReport squeezing_report(const EncodedExperiment& e) {
  SqueezingReport rep;
  for (double t : e.tanh_r) {
    rep.r.push_back(std::atanh(t));
    // sinh²(atanh t) = t² / (1 - t²)
    rep.n_sqz += t * t / (1.0 - t * t);
  }
  return rep;
}

std::vector<double> gamma_rescale(const EncodedExperiment& e, const std::vector<double>& gamma) {
  const std::size_t m = e.omega_diag.size();
  if (gamma.size() != m && gamma.size() != 2 * m) {
    throw ValidationError("gamma_rescale: gamma has " + std::to_string(gamma.size()) +
                          " entries, expected " + std::to_string(m) + " or " +
                          std::to_string(2 * m));
  }
  std::vector<double> out(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (!(gamma[i] >= 0.0) || !std::isfinite(gamma[i])) {
      throw ValidationError("gamma_rescale: entries must be finite and non-negative");
    }
    out[i] = e.omega_diag[i % m] * gamma[i];
  }
  return out;
}

bool validate_gamma_monotone(const Graph& g, const std::vector<double>& gamma) {
  const int m = g.node_count();
  if (static_cast<int>(gamma.size()) != m) {
    throw ValidationError("validate_gamma_monotone: length mismatch");
  }
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (g.weight(i) < g.weight(j) && gamma[i] > gamma[j]) return false;
    }
  }
  return true;
}

EncodedExperiment encode(const Graph& g, const EncodeOptions& options) {
  if (!(options.alpha >= 0.0)) throw ValidationError("alpha must be non-negative");
  Eigen::VectorXd d(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) d(i) = 1.0 + options.alpha * g.weight(i);
  const Eigen::MatrixXd shaped = d.asDiagonal() * g.adjacency() * d.asDiagonal();
  // B = s² · shaped, so s² = λ_max / s_max(shaped).
  const double s = std::sqrt(c_from_lambda_max(shaped, options.lambda_max));
  EncodedExperiment e = omega_rescale(g, s, options.alpha);
  auto tk = takagi_autonne(e.B);
  e.tanh_r = std::move(tk.singular_values);
  e.unitary = std::move(tk.unitary);
  e.lambda_max = e.tanh_r.empty() ? 0.0 : e.tanh_r.front();
  return with_gamma(std::move(e), options.gamma);
}

EncodedExperiment encode_matrix(const Eigen::MatrixXd& b, std::vector<double> gamma) {
  require_symmetric(b, "encode_matrix");
  EncodedExperiment e;
  e.B = b;
  e.c = 1.0;
  e.omega_diag.assign(static_cast<std::size_t>(b.rows()), 1.0);
  auto tk = takagi_autonne(b);
  e.tanh_r = std::move(tk.singular_values);
  e.unitary = std::move(tk.unitary);
  e.lambda_max = e.tanh_r.empty() ? 0.0 : e.tanh_r.front();
  return with_gamma(std::move(e), std::move(gamma));
}

EncodedExperiment with_gamma(EncodedExperiment e, std::vector<double> gamma) {
  e.gamma = broadcast_gamma(gamma, e.modes());
  e.gamma_rescaled = gamma_rescale(e, e.gamma);
  return e;
}

}  // namespace dgbs
