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

#include "dgbs/budget.hpp"

#include <cmath>

#include "dgbs/error.hpp"

namespace dgbs {

double lambda_for_squeezing(const Graph& g, double n_sqz, double alpha) {
  if (!(n_sqz > 0.0) || !std::isfinite(n_sqz)) {
    throw ValidationError("lambda_for_squeezing: n_sqz must be positive and finite");
  }
  auto squeezed = [&](double lambda) {
    EncodeOptions opt;
    opt.lambda_max = lambda;
    opt.alpha = alpha;
    return squeezing_report(encode(g, opt)).n_sqz;
  };
  double lo = 0.0, hi = 1.0 - 1e-12;
  if (squeezed(hi) < n_sqz) {
    throw ValidationError("lambda_for_squeezing: n_sqz out of reach below λ_max = 1");
  }
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    (squeezed(mid) < n_sqz ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double gamma_for_displacement(const EncodedExperiment& e, double n_disp) {
  if (!(n_disp >= 0.0) || !std::isfinite(n_disp)) {
    throw ValidationError("gamma_for_displacement: n_disp must be >= 0 and finite");
  }
  const double unit = mean_photon_budget(pure_state_from_encoding(e, {1.0})).n_disp;
  if (!(unit > 0.0)) throw NumericalError("gamma_for_displacement: displacement vanishes");
  return std::sqrt(n_disp / unit);
}

EncodedExperiment encode_for_budget(const Graph& g, double n_sqz, double n_disp, double alpha) {
  EncodeOptions opt;
  opt.lambda_max = lambda_for_squeezing(g, n_sqz, alpha);
  opt.alpha = alpha;
  EncodedExperiment e = encode(g, opt);
  const double gamma = gamma_for_displacement(e, n_disp);
  return with_gamma(std::move(e), {gamma});
}

double normalization_er_estimate(int modes, double gamma) {
  return gamma * gamma * (modes + 1) / 2.0;
}

double gamma_scaling_rule(double n_sqz, int modes) {
  return std::pow(n_sqz, 0.25) / std::sqrt(static_cast<double>(modes));
}

}  // namespace dgbs
