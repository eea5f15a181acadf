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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "dgbs/error.hpp"
#include "dgbs/hafnian.hpp"

namespace dgbs {

namespace {

constexpr double kNegativeTolerance = 1e-12;

bool is_real(const Eigen::MatrixXcd& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return m.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

bool is_real(const Eigen::VectorXcd& v) {
  if (v.size() == 0) return true;
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  return v.imag().cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

double checked(double p) {
  if (p < -kNegativeTolerance || !std::isfinite(p)) {
    throw NumericalError("probability evaluated to " + std::to_string(p));
  }
  return p;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

double binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

PhotonPattern PhotonPattern::from_subset(int modes, const NodeSubset& s) {
  PhotonPattern p{std::vector<int>(static_cast<std::size_t>(modes), 0)};
  for (int v : s) {
    if (v >= modes) throw ValidationError("subset index out of range");
    p.counts[v] = 1;
  }
  return p;
}

int PhotonPattern::total() const {
  int t = 0;
  for (int c : counts) t += c;
  return t;
}

bool PhotonPattern::collision_free() const {
  return std::all_of(counts.begin(), counts.end(), [](int c) { return c <= 1; });
}

double PhotonPattern::factorial_product() const {
  double f = 1.0;
  for (int c : counts) f *= std::tgamma(c + 1.0);
  return f;
}

PatternEvaluator::PatternEvaluator(const GaussianState& s)
    : modes_(s.modes), pure_(s.pure), kernel_(kernel_matrix(s)) {
  check_conditioning(s);
  log_prefactor_ = -normalization_exponent(s) - 0.5 * log_det_sigma_q(s);
  real_ = is_real(kernel_.matrix) && is_real(kernel_.loops);
  displaced_ = s.disp.cwiseAbs().maxCoeff() > 0.0;
}

double PatternEvaluator::operator()(const PhotonPattern& n) const {
  if (static_cast<int>(n.counts.size()) != modes_) {
    throw ValidationError("pattern length " + std::to_string(n.counts.size()) +
                          " does not match " + std::to_string(modes_) + " modes");
  }
  for (int c : n.counts) {
    if (c < 0) throw ValidationError("negative photon count");
  }
  const double scale = std::exp(log_prefactor_) / n.factorial_product();
  if (pure_) {
    // Kernel is B ⊕ B*: the loop hafnian factorizes into |lhaf(B_n)|².
    const Eigen::MatrixXcd b = kernel_.matrix.topLeftCorner(modes_, modes_);
    const Eigen::VectorXcd g = kernel_.loops.head(modes_);
    if (real_) {
      const double v = lhaf_fast(fill_diagonal(reduce(Eigen::MatrixXd(b.real()), n.counts),
                                               reduce_vector(Eigen::VectorXd(g.real()), n.counts)));
      return checked(scale * v * v);
    }
    const cplx v = lhaf_fast(fill_diagonal(reduce(b, n.counts), reduce_vector(g, n.counts)));
    return checked(scale * std::norm(v));
  }
  std::vector<int> doubled(n.counts);
  doubled.insert(doubled.end(), n.counts.begin(), n.counts.end());
  if (real_) {
    const double v =
        lhaf_fast(fill_diagonal(reduce(Eigen::MatrixXd(kernel_.matrix.real()), doubled),
                                reduce_vector(Eigen::VectorXd(kernel_.loops.real()), doubled)));
    return checked(scale * v);
  }
  const cplx v = lhaf_fast(fill_diagonal(reduce(kernel_.matrix, doubled),
                                         reduce_vector(kernel_.loops, doubled)));
  return checked(scale * v.real());
}

double PatternEvaluator::subset(const NodeSubset& s) const {
  return (*this)(PhotonPattern::from_subset(modes_, s));
}

double PatternEvaluator::gbs(const PhotonPattern& n) const {
  if (!pure_) throw ValidationError("pattern_prob_gbs: state is not pure");
  if (displaced_) throw ValidationError("pattern_prob_gbs: state is displaced");
  if (static_cast<int>(n.counts.size()) != modes_) {
    throw ValidationError("pattern length does not match mode count");
  }
  const Eigen::MatrixXcd b = kernel_.matrix.topLeftCorner(modes_, modes_);
  const cplx h = haf_fast(reduce(b, n.counts));
  return checked(std::exp(log_prefactor_) * std::norm(h) / n.factorial_product());
}

double pattern_prob_gbs(const GaussianState& s, const PhotonPattern& n) {
  return PatternEvaluator(s).gbs(n);
}

double pattern_prob_dgbs(const GaussianState& s, const PhotonPattern& n) {
  return PatternEvaluator(s)(n);
}

namespace {

// Detects the [[C, D], [D, C]] structure that real lossy kernels have.
bool doubled_block_structure(const Kernel& k, int m) {
  const Eigen::MatrixXd a = k.matrix.real();
  const double tol = 1e-13 * std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a.topLeftCorner(m, m) - a.bottomRightCorner(m, m)).cwiseAbs().maxCoeff() <= tol &&
         (a.topRightCorner(m, m) - a.bottomLeftCorner(m, m)).cwiseAbs().maxCoeff() <= tol &&
         (k.loops.head(m) - k.loops.tail(m)).cwiseAbs().maxCoeff() <= tol;
}

double window_count(int m, int k_min, int k_max) {
  double total = 0.0;
  for (int k = k_min; k <= k_max; ++k) total += binomial_coefficient(m, k);
  return total;
}

}  // namespace

CollisionFreeTable CollisionFreeTable::build(const GaussianState& s, int k_min, int k_max) {
  const int m = s.modes;
  if (k_min < 0 || k_max < k_min || k_max > m) {
    throw ValidationError("size window [" + std::to_string(k_min) + ", " +
                          std::to_string(k_max) + "] invalid for " + std::to_string(m) +
                          " modes");
  }
  if (m > 63) throw ResourceGuardError("collision-free table: more than 63 modes");
  const double count = window_count(m, k_min, k_max);
  if (count > kPatternGuard) {
    throw ResourceGuardError("collision-free table: " + format_double(count) +
                             " patterns exceeds the guard of 5e6");
  }

  CollisionFreeTable t;
  t.modes = m;
  t.k_min = k_min;
  t.k_max = k_max;
  const PatternEvaluator eval(s);
  const Kernel& ker = eval.kernel();
  const bool real = is_real(ker.matrix) && is_real(ker.loops);
  const double pref = std::exp(eval.log_prefactor());

  auto in_window = [&](std::uint64_t mask) {
    const int k = std::popcount(mask);
    return k >= k_min && k <= k_max;
  };

  std::vector<double> full;
  if (real && eval.pure() && m <= kSubsetTableMaxModes) {
    const std::vector<double> f =
        lhaf_subset_table(ker.matrix.topLeftCorner(m, m).real(), ker.loops.head(m).real());
    full.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) full[i] = pref * f[i] * f[i];
  } else if (real && m <= kDoubledTableMaxModes && doubled_block_structure(ker, m)) {
    const Eigen::MatrixXd a = ker.matrix.real();
    const std::vector<double> f = lhaf_doubled_subset_table(
        a.topLeftCorner(m, m), a.topRightCorner(m, m), ker.loops.head(m).real());
    full.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) full[i] = checked(pref * f[i]);
  }

  if (!full.empty()) {
    for (std::uint64_t mask = 0; mask < full.size(); ++mask) {
      if (!in_window(mask)) continue;
      t.masks.push_back(mask);
      t.probs.push_back(full[mask]);
    }
  } else {
    // Gosper's hack walks every mask with exactly k bits in increasing order.
    for (int k = k_min; k <= k_max; ++k) {
      if (k == 0) {
        t.masks.push_back(0);
        continue;
      }
      std::uint64_t mask = (std::uint64_t{1} << k) - 1;
      const std::uint64_t limit = std::uint64_t{1} << m;
      while (mask < limit) {
        t.masks.push_back(mask);
        const std::uint64_t c = mask & (~mask + 1);
        const std::uint64_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
      }
    }
    std::sort(t.masks.begin(), t.masks.end());
    t.probs.resize(t.masks.size());
    for (std::size_t i = 0; i < t.masks.size(); ++i) {
      t.probs[i] = eval.subset(NodeSubset::from_mask(t.masks[i]));
    }
  }
  for (double p : t.probs) t.raw_mass += p;
  return t;
}

SubsetDistribution subset_distribution(const GaussianState& s, int k, bool renormalize) {
  const int m = s.modes;
  if (k < 0 || k > m) throw ValidationError("subset size out of range");
  if (binomial_coefficient(m, k) > kPatternGuard) {
    throw ResourceGuardError("subset_distribution: C(" + std::to_string(m) + ", " +
                             std::to_string(k) + ") exceeds the guard of 5e6");
  }
  const CollisionFreeTable t = CollisionFreeTable::build(s, k, k);
  SubsetDistribution d;
  d.k = k;
  d.entries.reserve(t.masks.size());
  for (std::size_t i = 0; i < t.masks.size(); ++i) {
    d.entries.emplace_back(NodeSubset::from_mask(t.masks[i]), t.probs[i]);
  }
  std::sort(d.entries.begin(), d.entries.end());
  for (const auto& e : d.entries) d.total_raw_mass += e.second;
  if (renormalize) {
    if (!(d.total_raw_mass > 0.0)) {
      throw NumericalError("subset_distribution: zero mass at k = " + std::to_string(k));
    }
    for (auto& e : d.entries) e.second /= d.total_raw_mass;
    d.renormalized = true;
  }
  return d;
}

double max_clique_prob(const GaussianState& s, const NodeSubset& clique) {
  return PatternEvaluator(s).subset(clique);
}

double shannon_entropy(const SubsetDistribution& d) {
  if (!d.renormalized) throw ValidationError("shannon_entropy: distribution is not renormalized");
  double h = 0.0;
  for (const auto& e : d.entries) {
    if (e.second > 0.0) h -= e.second * std::log2(e.second);
  }
  return h;
}

std::vector<double> photon_number_marginal(const GaussianState& s, int k_max) {
  const CollisionFreeTable t = CollisionFreeTable::build(s, 0, k_max);
  std::vector<double> out(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (std::size_t i = 0; i < t.masks.size(); ++i) out[std::popcount(t.masks[i])] += t.probs[i];
  return out;
}

void write_distribution_csv(std::ostream& out, const SubsetDistribution& d, const Graph& g) {
  out << "# normalization=" << (d.renormalized ? "conditioned" : "raw") << '\n';
  out << "subset;probability;is_clique;weight\n";
  for (const auto& [subset, p] : d.entries) {
    out << subset.to_string() << ';' << format_double(p) << ';'
        << (is_clique(g, subset) ? 1 : 0) << ';' << format_double(clique_weight(g, subset))
        << '\n';
  }
}

}  // namespace dgbs
