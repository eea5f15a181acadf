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

#include "dgbs/encoding.hpp"
#include "dgbs/gaussian.hpp"
#include "dgbs/graph.hpp"

namespace dgbs {

/// λ_max at which encode(g) with the given α has total squeezed photon
/// number n_sqz. Bisection on (0, 1); n_sqz grows monotonically with λ_max.
double lambda_for_squeezing(const Graph& g, double n_sqz, double alpha = 0.0);

/// Uniform loop strength giving the pure state of `e` a displacement photon
/// number n_disp. The displacement is linear in γ, so n_disp scales as γ².
double gamma_for_displacement(const EncodedExperiment& e, double n_disp);

/// Encoding whose pure state carries exactly the requested photon budget.
EncodedExperiment encode_for_budget(const Graph& g, double n_sqz, double n_disp,
                                    double alpha = 0.0);

/// Erdős–Rényi average of the normalization exponent for uniform γ in the
/// weak-squeezing regime: γ² (M + 1) / 2.
double normalization_er_estimate(int modes, double gamma);

/// Loop strength n_sqz^{1/4} / √M that keeps the coherent photon number of
/// the same order as √n_sqz.
double gamma_scaling_rule(double n_sqz, int modes);

}  // namespace dgbs
