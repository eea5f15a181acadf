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

#include <vector>

#include <Eigen/Dense>

#include "dgbs/encoding.hpp"

namespace dgbs {

/// Gaussian state of M modes in the amplitude-ordered (a, a†) basis. The
/// vacuum has sigma = I/2 and Σ_Q = sigma + I/2.
struct GaussianState {
  int modes = 0;
  Eigen::MatrixXcd sigma;
  Eigen::VectorXcd disp;
  /// Set for states built from an encoding and never degraded by loss. The
  /// probability code uses it to take the M-index pure-state shortcut.
  bool pure = false;
};

/// Kernel X (I - Σ_Q⁻¹)* together with the loop vector placed on its
/// diagonal when evaluating loop hafnians.
struct Kernel {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd loops;
};

struct PhotonBudget {
  double n_sqz = 0.0;
  double n_disp = 0.0;
  double ratio = 0.0;
  bool ratio_defined = false;  // false when n_sqz == 0
  bool collision_free = false;  // M >= (n_sqz + n_disp)²
  double margin = 0.0;          // M - (n_sqz + n_disp)²
};

GaussianState vacuum_state(int modes);

/// Pure state with Σ_Q⁻¹ = [[I, -B], [-B*, I]] whose loop vector equals the
/// doubled γ̃ of the encoding.
GaussianState pure_state_from_encoding(const EncodedExperiment& e);
GaussianState pure_state_from_encoding(const EncodedExperiment& e, const std::vector<double>& gamma);

/// Output-side loss with transmission eta, identical on both halves.
GaussianState apply_loss(const GaussianState& s, double eta);
GaussianState apply_loss(const GaussianState& s, const std::vector<double>& eta);

Eigen::MatrixXcd sigma_q(const GaussianState& s);

Kernel kernel_matrix(const GaussianState& s);

/// ½ d† Σ_Q⁻¹ d, evaluated with a Cholesky solve.
double normalization_exponent(const GaussianState& s);
/// ½ γ̂† Σ_Q γ̂ using the loop vector of kernel_matrix; equal to the above.
double normalization_exponent_from_loops(const GaussianState& s);

/// log det Σ_Q accumulated from the Cholesky diagonal.
double log_det_sigma_q(const GaussianState& s);

/// det(2 sigma): 1 for pure states, larger once loss mixes the state.
double purity_determinant(const GaussianState& s);

PhotonBudget mean_photon_budget(const GaussianState& s);

/// Throws NumericalError when Σ_Q is not positive definite or its condition
/// number exceeds 1e12.
void check_conditioning(const GaussianState& s);

}  // namespace dgbs
