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

#include "dgbs/gaussian.hpp"

#include <cmath>

#include "dgbs/error.hpp"

namespace dgbs {

namespace {

constexpr double kMaxCondition = 1e12;

Eigen::MatrixXcd exchange(int m) {
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  x.topRightCorner(m, m).setIdentity();
  x.bottomLeftCorner(m, m).setIdentity();
  return x;
}

Eigen::LLT<Eigen::MatrixXcd> factor_q(const GaussianState& s) {
  Eigen::LLT<Eigen::MatrixXcd> llt(sigma_q(s));
  if (llt.info() != Eigen::Success) {
    throw NumericalError("Sigma_Q is not positive definite");
  }
  return llt;
}

}  // namespace

GaussianState vacuum_state(int modes) {
  if (modes <= 0) throw ValidationError("vacuum_state: mode count must be positive");
  GaussianState s;
  s.modes = modes;
  s.sigma = 0.5 * Eigen::MatrixXcd::Identity(2 * modes, 2 * modes);
  s.disp = Eigen::VectorXcd::Zero(2 * modes);
  s.pure = true;
  return s;
}

GaussianState pure_state_from_encoding(const EncodedExperiment& e) {
  const int m = e.modes();
  for (double t : e.tanh_r) {
    if (!(t < 1.0)) throw ValidationError("pure_state_from_encoding: tanh r >= 1");
  }
  Eigen::MatrixXcd qinv = Eigen::MatrixXcd::Identity(2 * m, 2 * m);
  const Eigen::MatrixXcd b = e.B.cast<std::complex<double>>();
  qinv.topRightCorner(m, m) = -b;
  qinv.bottomLeftCorner(m, m) = -b.conjugate();

  Eigen::LLT<Eigen::MatrixXcd> llt(qinv);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("pure_state_from_encoding: singular Sigma_Q");
  }
  const Eigen::MatrixXcd q = llt.solve(Eigen::MatrixXcd::Identity(2 * m, 2 * m));

  Eigen::VectorXcd gamma_hat = Eigen::VectorXcd::Zero(2 * m);
  if (!e.gamma_rescaled.empty()) {
    if (static_cast<int>(e.gamma_rescaled.size()) != m) {
      throw ValidationError("pure_state_from_encoding: gamma length mismatch");
    }
    for (int i = 0; i < m; ++i) {
      gamma_hat(i) = e.gamma_rescaled[i];
      gamma_hat(i + m) = e.gamma_rescaled[i];
    }
  }

  GaussianState s;
  s.modes = m;
  s.sigma = q - 0.5 * Eigen::MatrixXcd::Identity(2 * m, 2 * m);
  s.sigma = 0.5 * (s.sigma + s.sigma.adjoint()).eval();
  // Σ_Q⁻¹ d = γ̂: d = Σ_Q γ̂.
  s.disp = q * gamma_hat;
  s.pure = true;
  return s;
}

GaussianState pure_state_from_encoding(const EncodedExperiment& e,
                                       const std::vector<double>& gamma) {
  return pure_state_from_encoding(with_gamma(e, gamma));
}

GaussianState apply_loss(const GaussianState& s, double eta) {
  return apply_loss(s, std::vector<double>(static_cast<std::size_t>(s.modes), eta));
}

GaussianState apply_loss(const GaussianState& s, const std::vector<double>& eta) {
  const int m = s.modes;
  if (static_cast<int>(eta.size()) != m) {
    throw ValidationError("apply_loss: expected " + std::to_string(m) + " transmissions");
  }
  Eigen::VectorXd t(2 * m);
  bool lossless = true;
  for (int i = 0; i < m; ++i) {
    if (!(eta[i] >= 0.0 && eta[i] <= 1.0)) throw ValidationError("apply_loss: eta outside [0, 1]");
    t(i) = t(i + m) = std::sqrt(eta[i]);
    lossless = lossless && eta[i] == 1.0;
  }
  GaussianState out = s;
  out.sigma = t.asDiagonal() * s.sigma * t.asDiagonal();
  for (int i = 0; i < 2 * m; ++i) out.sigma(i, i) += 0.5 * (1.0 - t(i) * t(i));
  out.disp = t.asDiagonal() * s.disp;
  out.pure = s.pure && lossless;
  return out;
}

Eigen::MatrixXcd sigma_q(const GaussianState& s) {
  return s.sigma + 0.5 * Eigen::MatrixXcd::Identity(2 * s.modes, 2 * s.modes);
}

Kernel kernel_matrix(const GaussianState& s) {
  const int n = 2 * s.modes;
  const auto llt = factor_q(s);
  const Eigen::MatrixXcd qinv = llt.solve(Eigen::MatrixXcd::Identity(n, n));
  const Eigen::MatrixXcd x = exchange(s.modes);
  Kernel k;
  k.matrix = x * (Eigen::MatrixXcd::Identity(n, n) - qinv).conjugate();
  k.matrix = 0.5 * (k.matrix + k.matrix.transpose()).eval();
  k.loops = x * (qinv.conjugate() * s.disp.conjugate());
  return k;
}

double normalization_exponent(const GaussianState& s) {
  const auto llt = factor_q(s);
  const std::complex<double> v = s.disp.dot(llt.solve(s.disp));
  return 0.5 * v.real();
}

double normalization_exponent_from_loops(const GaussianState& s) {
  const Kernel k = kernel_matrix(s);
  const std::complex<double> v = k.loops.dot(sigma_q(s) * k.loops);
  return 0.5 * v.real();
}

double log_det_sigma_q(const GaussianState& s) {
  const auto llt = factor_q(s);
  const Eigen::MatrixXcd& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) acc += std::log(l(i, i).real());
  return 2.0 * acc;
}

double purity_determinant(const GaussianState& s) {
  return (2.0 * s.sigma).determinant().real();
}

PhotonBudget mean_photon_budget(const GaussianState& s) {
  PhotonBudget b;
  for (int i = 0; i < s.modes; ++i) {
    b.n_sqz += s.sigma(i, i).real() - 0.5;
    b.n_disp += std::norm(s.disp(i));
  }
  // Clamp rounding noise of a vacuum covariance.
  if (std::abs(b.n_sqz) < 1e-14) b.n_sqz = 0.0;
  b.ratio_defined = b.n_sqz > 0.0;
  b.ratio = b.ratio_defined ? b.n_disp / b.n_sqz : 0.0;
  const double n = b.n_sqz + b.n_disp;
  b.margin = s.modes - n * n;
  b.collision_free = b.margin >= 0.0;
  return b;
}

void check_conditioning(const GaussianState& s) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sigma_q(s), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (!(lo > 0.0)) throw NumericalError("Sigma_Q is not positive definite");
  if (hi / lo > kMaxCondition) {
    throw NumericalError("Sigma_Q condition number " + std::to_string(hi / lo) +
                         " exceeds 1e12");
  }
}

}  // namespace dgbs
