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

#include "dgbs/hafnian.hpp"

#include <bit>
#include <cstdint>

#include "dgbs/error.hpp"

namespace dgbs {

namespace {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

void require_square(Eigen::Index rows, Eigen::Index cols, const char* who) {
  if (rows != cols) throw ValidationError(std::string(who) + ": matrix is not square");
}

void require_enum_size(Eigen::Index n, const char* who) {
  if (n > kEnumMaxDim) {
    throw ResourceGuardError(std::string(who) + ": dimension " + std::to_string(n) +
                             " exceeds the enumeration limit " + std::to_string(kEnumMaxDim));
  }
}

cplx haf_rec(const Eigen::MatrixXcd& k, std::uint32_t remaining) {
  if (remaining == 0) return 1.0;
  const int i = std::countr_zero(remaining);
  const std::uint32_t rest = remaining & (remaining - 1);
  cplx total = 0.0;
  for (std::uint32_t r = rest; r; r &= r - 1) {
    const int j = std::countr_zero(r);
    total += k(i, j) * haf_rec(k, rest & ~(std::uint32_t{1} << j));
  }
  return total;
}

cplx lhaf_rec(const Eigen::MatrixXcd& k, std::uint32_t remaining) {
  if (remaining == 0) return 1.0;
  const int i = std::countr_zero(remaining);
  const std::uint32_t rest = remaining & (remaining - 1);
  cplx total = k(i, i) * lhaf_rec(k, rest);
  for (std::uint32_t r = rest; r; r &= r - 1) {
    const int j = std::countr_zero(r);
    total += k(i, j) * lhaf_rec(k, rest & ~(std::uint32_t{1} << j));
  }
  return total;
}

// Indices are grouped into pairs (2p, 2p+1). For every subset Z of pairs,
// C = A_Z X_Z and the generating function exp(Σ_j (tr C^j / 2j + ½ (Xv)ᵀ
// C^{j-1} v) t^j) contributes its t^m coefficient with sign (-1)^{m-|Z|}.
template <typename Scalar>
Scalar power_trace(const Mat<Scalar>& k, bool with_loops) {
  Eigen::Index n = k.rows();
  if (n == 0) return Scalar(1);
  if (with_loops && (k.diagonal().array() == Scalar(0)).all()) with_loops = false;
  if (n % 2 == 1 && !with_loops) return Scalar(0);

  // An odd loop hafnian gains a vertex that can only loop, with weight 1.
  const Eigen::Index padded = n + (n % 2);
  Mat<Scalar> a = Mat<Scalar>::Zero(padded, padded);
  a.topLeftCorner(n, n) = k;
  Vec<Scalar> loops = Vec<Scalar>::Zero(padded);
  if (with_loops) {
    loops.head(n) = k.diagonal();
    if (padded > n) loops(n) = Scalar(1);
  }
  a.diagonal().setZero();
  n = padded;

  const int m = static_cast<int>(n / 2);
  if (m > 30) throw ResourceGuardError("hafnian: dimension too large");
  std::vector<Scalar> coeff(static_cast<std::size_t>(m) + 1);
  std::vector<Scalar> series(static_cast<std::size_t>(m) + 1);
  std::vector<Eigen::Index> idx;
  Scalar total(0);

  for (std::uint64_t z = 1; z < (std::uint64_t{1} << m); ++z) {
    idx.clear();
    for (int p = 0; p < m; ++p) {
      if (z >> p & 1) {
        idx.push_back(2 * p);
        idx.push_back(2 * p + 1);
      }
    }
    const auto s = static_cast<Eigen::Index>(idx.size());
    Mat<Scalar> c(s, s);
    Vec<Scalar> v(s);
    Eigen::Matrix<Scalar, 1, Eigen::Dynamic> w(s);
    for (Eigen::Index r = 0; r < s; ++r) {
      for (Eigen::Index col = 0; col < s; ++col) c(r, col) = a(idx[r], idx[col ^ 1]);
      v(r) = loops(idx[r]);
      w(r) = loops(idx[r ^ 1]);
    }

    Mat<Scalar> power = c;
    for (int j = 1; j <= m; ++j) {
      Scalar term = power.trace() / Scalar(2.0 * j);
      if (with_loops) {
        term += Scalar(0.5) * (w * v).value();
        w = w * c;
      }
      coeff[j] = term;
      if (j < m) power = power * c;
    }

    // exp of the truncated series: k p_k = Σ_j j a_j p_{k-j}.
    series[0] = Scalar(1);
    for (int kk = 1; kk <= m; ++kk) {
      Scalar acc(0);
      for (int j = 1; j <= kk; ++j) acc += Scalar(double(j)) * coeff[j] * series[kk - j];
      series[kk] = acc / Scalar(double(kk));
    }
    const bool negative = (m - std::popcount(z)) % 2 == 1;
    total += negative ? -series[m] : series[m];
  }
  return total;
}

}  // namespace

Eigen::MatrixXcd fill_diagonal(Eigen::MatrixXcd k, const Eigen::VectorXcd& loops) {
  if (loops.size() != k.rows()) throw ValidationError("fill_diagonal: length mismatch");
  k.diagonal() = loops;
  return k;
}

Eigen::MatrixXd fill_diagonal(Eigen::MatrixXd k, const Eigen::VectorXd& loops) {
  if (loops.size() != k.rows()) throw ValidationError("fill_diagonal: length mismatch");
  k.diagonal() = loops;
  return k;
}

cplx haf_enum(const Eigen::MatrixXcd& k) {
  require_square(k.rows(), k.cols(), "haf_enum");
  require_enum_size(k.rows(), "haf_enum");
  if (k.rows() % 2) return 0.0;
  return haf_rec(k, static_cast<std::uint32_t>((std::uint64_t{1} << k.rows()) - 1));
}

cplx lhaf_enum(const Eigen::MatrixXcd& k) {
  require_square(k.rows(), k.cols(), "lhaf_enum");
  require_enum_size(k.rows(), "lhaf_enum");
  return lhaf_rec(k, static_cast<std::uint32_t>((std::uint64_t{1} << k.rows()) - 1));
}

cplx haf_fast(const Eigen::MatrixXcd& k) {
  require_square(k.rows(), k.cols(), "haf_fast");
  return power_trace<cplx>(k, false);
}

cplx lhaf_fast(const Eigen::MatrixXcd& k) {
  require_square(k.rows(), k.cols(), "lhaf_fast");
  return power_trace<cplx>(k, true);
}

double haf_fast(const Eigen::MatrixXd& k) {
  require_square(k.rows(), k.cols(), "haf_fast");
  return power_trace<double>(k, false);
}

double lhaf_fast(const Eigen::MatrixXd& k) {
  require_square(k.rows(), k.cols(), "lhaf_fast");
  return power_trace<double>(k, true);
}

namespace {

Eigen::MatrixXcd drop_indices(const Eigen::MatrixXcd& k, std::uint32_t dropped) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    if (!(dropped >> i & 1)) keep.push_back(i);
  }
  const auto s = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXcd out(s, s);
  for (Eigen::Index r = 0; r < s; ++r) {
    for (Eigen::Index c = 0; c < s; ++c) out(r, c) = k(keep[r], keep[c]);
  }
  return out;
}

// Σ over loop sets L with |L| <= max_loops and an even complement.
cplx expansion_sum(const Eigen::MatrixXcd& k, const Eigen::VectorXcd& gamma, int max_loops) {
  const auto n = static_cast<int>(k.rows());
  cplx total = 0.0;
  for (std::uint32_t l = 0; l < (std::uint32_t{1} << n); ++l) {
    const int size = std::popcount(l);
    if (size > max_loops || (n - size) % 2) continue;
    cplx prod = 1.0;
    for (std::uint32_t r = l; r; r &= r - 1) prod *= gamma(std::countr_zero(r));
    total += prod * haf_fast(drop_indices(k, l));
  }
  return total;
}

}  // namespace

double lhaf_expansion_check(const Eigen::MatrixXcd& k, const Eigen::VectorXcd& gamma) {
  require_square(k.rows(), k.cols(), "lhaf_expansion_check");
  if (gamma.size() != k.rows()) throw ValidationError("lhaf_expansion_check: length mismatch");
  if (k.rows() > 10) throw ResourceGuardError("lhaf_expansion_check: dimension above 10");
  const cplx lhs = lhaf_enum(fill_diagonal(k, gamma));
  const cplx rhs = expansion_sum(k, gamma, static_cast<int>(k.rows()));
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

cplx lhaf_truncated(const Eigen::MatrixXcd& k, const Eigen::VectorXcd& gamma, int order) {
  require_square(k.rows(), k.cols(), "lhaf_truncated");
  if (gamma.size() != k.rows()) throw ValidationError("lhaf_truncated: length mismatch");
  if (order != 0 && order != 1) throw ValidationError("lhaf_truncated: order must be 0 or 1");
  if (k.rows() > 30) throw ResourceGuardError("lhaf_truncated: dimension above 30");
  if (order == 0) return haf_fast(k);
  cplx total = haf_fast(k);
  const auto n = static_cast<int>(k.rows());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const std::uint32_t l = (std::uint32_t{1} << a) | (std::uint32_t{1} << b);
      total += gamma(a) * gamma(b) * haf_fast(drop_indices(k, l));
    }
  }
  return total;
}

}  // namespace dgbs
