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

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>

#include "dgbs/error.hpp"
#include "dgbs/hafnian.hpp"

namespace dgbs {

std::vector<double> lhaf_subset_table(const Eigen::MatrixXd& b, const Eigen::VectorXd& loops) {
  const auto m = static_cast<int>(b.rows());
  if (b.cols() != m || loops.size() != m) throw ValidationError("lhaf_subset_table: shape mismatch");
  if (m > kSubsetTableMaxModes) {
    throw ResourceGuardError("lhaf_subset_table: " + std::to_string(m) + " modes exceeds " +
                             std::to_string(kSubsetTableMaxModes));
  }
  const std::uint64_t size = std::uint64_t{1} << m;
  std::vector<double> f(size);
  f[0] = 1.0;
  // The lowest member either loops or pairs with a higher member.
  for (std::uint64_t s = 1; s < size; ++s) {
    const int i = std::countr_zero(s);
    const std::uint64_t rest = s & (s - 1);
    double acc = loops(i) * f[rest];
    for (std::uint64_t r = rest; r; r &= r - 1) {
      const int j = std::countr_zero(r);
      acc += b(i, j) * f[rest & ~(std::uint64_t{1} << j)];
    }
    f[s] = acc;
  }
  return f;
}

namespace {

// Single-pair-matching sum of the multiset holding c_i copies of index i,
// c ∈ {0,1,2}^M, with edge weights k (k_ii joins the two copies of i) and
// loop weights h. Returns only the entries where every c_i ∈ {0, 2}, indexed
// by the bitmask of indices with c_i = 2.
std::vector<double> doubled_table(const Eigen::MatrixXd& k, const Eigen::VectorXd& h) {
  const auto m = static_cast<int>(k.rows());
  std::vector<std::uint64_t> pow3(static_cast<std::size_t>(m) + 1, 1);
  for (int i = 1; i <= m; ++i) pow3[i] = pow3[i - 1] * 3;
  const std::uint64_t size = pow3[m];

  std::vector<double> f(size);
  std::vector<double> out(std::size_t{1} << m);
  std::vector<int> digit(static_cast<std::size_t>(m), 0);
  int ones = 0;
  std::uint64_t twos = 0;
  f[0] = 1.0;
  out[0] = 1.0;
  for (std::uint64_t code = 1; code < size; ++code) {
    // Base-3 increment, tracking how many digits are 1 and which are 2.
    for (int p = 0;; ++p) {
      const int next = ++digit[p];
      if (next == 1) {
        ++ones;
        break;
      }
      if (next == 2) {
        --ones;
        twos |= std::uint64_t{1} << p;
        break;
      }
      digit[p] = 0;
      twos &= ~(std::uint64_t{1} << p);
    }
    int i = 0;
    while (digit[i] == 0) ++i;
    const std::uint64_t minus_i = code - pow3[i];
    double acc = h(i) * f[minus_i];
    if (digit[i] == 2) acc += k(i, i) * f[minus_i - pow3[i]];
    for (int j = i + 1; j < m; ++j) {
      if (digit[j]) acc += digit[j] * k(i, j) * f[minus_i - pow3[j]];
    }
    f[code] = acc;

    if (ones == 0) out[twos] = acc;
  }
  return out;
}

}  // namespace

// With x_i, y_i the two copies of mode i, the substitution u = (x + y)/√2,
// v = (x - y)/√2 separates the generating function into a u part with kernel
// C₀ + D and loops √2 g, and a loop-free v part with kernel C₀ - D. Each
// x_i y_i derivative becomes (∂u_i² - ∂v_i²)/2.
std::vector<double> lhaf_doubled_subset_table(const Eigen::MatrixXd& c, const Eigen::MatrixXd& d,
                                              const Eigen::VectorXd& g) {
  const auto m = static_cast<int>(c.rows());
  if (c.cols() != m || d.rows() != m || d.cols() != m || g.size() != m) {
    throw ValidationError("lhaf_doubled_subset_table: shape mismatch");
  }
  if (m > kDoubledTableMaxModes) {
    throw ResourceGuardError("lhaf_doubled_subset_table: " + std::to_string(m) +
                             " modes exceeds " + std::to_string(kDoubledTableMaxModes));
  }
  Eigen::MatrixXd c0 = c;
  c0.diagonal().setZero();
  const std::vector<double> fu = doubled_table(c0 + d, std::sqrt(2.0) * g);
  const std::vector<double> fv = doubled_table(c0 - d, Eigen::VectorXd::Zero(m));

  const std::uint64_t size = std::uint64_t{1} << m;
  std::vector<double> out(size);
  for (std::uint64_t s = 0; s < size; ++s) {
    const int k = std::popcount(s);
    double acc = 0.0;
    // Enumerate T ⊆ S, including T = S and T = ∅.
    for (std::uint64_t t = s;; t = (t - 1) & s) {
      const bool negative = (k - std::popcount(t)) % 2 == 1;
      const double term = fu[t] * fv[s & ~t];
      acc += negative ? -term : term;
      if (t == 0) break;
    }
    out[s] = std::ldexp(acc, -k);
  }
  return out;
}

}  // namespace dgbs
