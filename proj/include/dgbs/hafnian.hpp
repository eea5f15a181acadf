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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dgbs {

using cplx = std::complex<double>;

/// Repeats row/column i of b counts[i] times, keeping ascending mode order.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> reduce(
    const Eigen::MatrixBase<Derived>& b, std::span<const int> counts) {
  std::vector<Eigen::Index> idx;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (int r = 0; r < counts[i]; ++r) idx.push_back(static_cast<Eigen::Index>(i));
  }
  const auto n = static_cast<Eigen::Index>(idx.size());
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) out(r, c) = b(idx[r], idx[c]);
  }
  return out;
}

/// Same expansion applied to a vector.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> reduce_vector(
    const Eigen::MatrixBase<Derived>& v, std::span<const int> counts) {
  std::vector<typename Derived::Scalar> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    for (int r = 0; r < counts[i]; ++r) out.push_back(v(static_cast<Eigen::Index>(i)));
  }
  return Eigen::Map<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>>(
      out.data(), static_cast<Eigen::Index>(out.size()));
}

/// Copy of k with its diagonal replaced by loops.
Eigen::MatrixXcd fill_diagonal(Eigen::MatrixXcd k, const Eigen::VectorXcd& loops);
Eigen::MatrixXd fill_diagonal(Eigen::MatrixXd k, const Eigen::VectorXd& loops);

/// Largest dimension accepted by the enumeration oracles.
inline constexpr int kEnumMaxDim = 14;

/// Sum over perfect matchings, built by always pairing the lowest unmatched
/// index. Ignores the diagonal.
cplx haf_enum(const Eigen::MatrixXcd& k);
/// Sum over single-pair matchings; diagonal entries are the loop weights.
cplx lhaf_enum(const Eigen::MatrixXcd& k);

/// Power-trace formulas, O(n³ 2^{n/2}). The loop variant reads loop weights
/// from the diagonal; haf_fast ignores the diagonal.
cplx haf_fast(const Eigen::MatrixXcd& k);
cplx lhaf_fast(const Eigen::MatrixXcd& k);
double haf_fast(const Eigen::MatrixXd& k);
double lhaf_fast(const Eigen::MatrixXd& k);

/// Evaluates the loop hafnian of fd(k, gamma) twice: directly, and as the sum
/// over even-complement index subsets L of Π_{j∈L} γ_j · Haf(k without L).
/// Returns |lhs - rhs| / (1 + |lhs|).
double lhaf_expansion_check(const Eigen::MatrixXcd& k, const Eigen::VectorXcd& gamma);

/// Partial sums of the same expansion: order 0 is Haf(k); order 1 adds every
/// two-loop term γ_a γ_b Haf(k without {a, b}).
cplx lhaf_truncated(const Eigen::MatrixXcd& k, const Eigen::VectorXcd& gamma, int order);

/// Loop hafnian of every principal submatrix of fd(b, loops), indexed by the
/// bitmask of kept rows. Needs b.rows() <= kSubsetTableMaxModes.
inline constexpr int kSubsetTableMaxModes = 24;
std::vector<double> lhaf_subset_table(const Eigen::MatrixXd& b, const Eigen::VectorXd& loops);

/// For a 2M kernel of the form [[C, D], [D, C]] with loops (g, g), returns for
/// every S ⊆ [M] the loop hafnian of the kernel restricted to S ∪ (S + M).
/// Needs M <= kDoubledTableMaxModes (the intermediate table has 3^M entries).
inline constexpr int kDoubledTableMaxModes = 16;
std::vector<double> lhaf_doubled_subset_table(const Eigen::MatrixXd& c, const Eigen::MatrixXd& d,
                                              const Eigen::VectorXd& g);

}  // namespace dgbs
