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

#include "dgbs/graph.hpp"

namespace dgbs {

/// Device configuration for one graph: B = Ω A Ω with Ω_ii = c (1 + α w_i),
/// its Takagi factors, and the loop strengths before and after Ω rescaling.
///
/// With α = 0 and unit node weights this is B = c² A, so `c` here is the
/// square root of the scalar written as c in B = cA. Most callers should not
/// pick c directly and use encode(), which solves for it from λ_max.
struct EncodedExperiment {
  Eigen::MatrixXd B;
  double c = 0.0;
  std::vector<double> omega_diag;
  double alpha = 0.0;
  double lambda_max = 0.0;
  std::vector<double> tanh_r;
  Eigen::MatrixXcd unitary;
  std::vector<double> gamma;
  std::vector<double> gamma_rescaled;

  int modes() const { return static_cast<int>(B.rows()); }
};

struct TakagiResult {
  Eigen::MatrixXcd unitary;
  std::vector<double> singular_values;  // descending
};

struct SqueezingReport {
  std::vector<double> r;
  double n_sqz = 0.0;
};

struct EncodeOptions {
  double lambda_max = 0.5;
  double alpha = 0.0;
  /// Either empty (no displacement), a single value broadcast to every node,
  /// or one entry per node.
  std::vector<double> gamma;
};

/// Largest singular value of a symmetric matrix (max |eigenvalue|).
double max_singular_value(const Eigen::MatrixXd& a);

/// λ_max / s_max(A): the factor t for which t·A has top singular value λ_max.
double c_from_lambda_max(const Eigen::MatrixXd& a, double lambda_max);

/// Fills B, c, omega_diag and alpha; the remaining fields are left empty.
EncodedExperiment omega_rescale(const Graph& g, double c, double alpha);

TakagiResult takagi_autonne(const Eigen::MatrixXd& b);

SqueezingReport squeezing_report(const EncodedExperiment& e);

/// γ̃ = Ω γ for length-M input, (Ω ⊕ Ω) γ for length-2M input.
std::vector<double> gamma_rescale(const EncodedExperiment& e, const std::vector<double>& gamma);

bool validate_gamma_monotone(const Graph& g, const std::vector<double>& gamma);

/// Picks the Ω scalar so that the top singular value of B equals
/// options.lambda_max, then fills every field.
EncodedExperiment encode(const Graph& g, const EncodeOptions& options);

/// Encoding of an explicit B (Ω = I, c = 1) with loops placed as given. Used
/// for hand-built states such as two-mode squeezed vacuum.
EncodedExperiment encode_matrix(const Eigen::MatrixXd& b, std::vector<double> gamma = {});

/// Same encoding with a different loop strength; B and Takagi data are reused.
EncodedExperiment with_gamma(EncodedExperiment e, std::vector<double> gamma);

}  // namespace dgbs
