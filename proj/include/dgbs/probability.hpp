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

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "dgbs/gaussian.hpp"
#include "dgbs/graph.hpp"

namespace dgbs {

/// Photon counts per mode.
struct PhotonPattern {
  std::vector<int> counts;

  static PhotonPattern from_subset(int modes, const NodeSubset& s);
  int total() const;
  bool collision_free() const;
  /// Π n_i!
  double factorial_product() const;
};

/// Caches the kernel and prefactor of one state so many patterns can be
/// evaluated cheaply. Safe to share between threads.
class PatternEvaluator {
 public:
  explicit PatternEvaluator(const GaussianState& s);

  /// D-GBS probability; lossy states go through the 2M-index kernel.
  double operator()(const PhotonPattern& n) const;
  double subset(const NodeSubset& s) const;
  /// Displacement-free formula: |Haf(B_n)|² prefactor / n!. Requires a pure
  /// state with zero displacement.
  double gbs(const PhotonPattern& n) const;

  int modes() const { return modes_; }
  bool pure() const { return pure_; }
  double log_prefactor() const { return log_prefactor_; }
  const Kernel& kernel() const { return kernel_; }

 private:
  int modes_;
  bool pure_;
  bool real_;
  bool displaced_;
  double log_prefactor_;
  Kernel kernel_;
};

double pattern_prob_gbs(const GaussianState& s, const PhotonPattern& n);
double pattern_prob_dgbs(const GaussianState& s, const PhotonPattern& n);

/// Patterns the enumeration-based routines may visit in one call.
inline constexpr double kPatternGuard = 5e6;

/// Probabilities of every 0/1 pattern with k_min <= clicks <= k_max.
struct CollisionFreeTable {
  int modes = 0;
  int k_min = 0;
  int k_max = 0;
  std::vector<std::uint64_t> masks;  // increasing
  std::vector<double> probs;
  double raw_mass = 0.0;

  static CollisionFreeTable build(const GaussianState& s, int k_min, int k_max);
};

struct SubsetDistribution {
  int k = 0;
  std::vector<std::pair<NodeSubset, double>> entries;  // lexicographic order
  bool renormalized = false;
  double total_raw_mass = 0.0;
};

/// Collision-free patterns with exactly k clicks. Throws ResourceGuardError
/// when C(M, k) exceeds kPatternGuard.
SubsetDistribution subset_distribution(const GaussianState& s, int k, bool renormalize = true);

/// Raw probability of the clique's indicator pattern.
double max_clique_prob(const GaussianState& s, const NodeSubset& clique);

/// Base-2 entropy of a renormalized distribution.
double shannon_entropy(const SubsetDistribution& d);

/// Raw collision-free mass at each click count 0..k_max.
std::vector<double> photon_number_marginal(const GaussianState& s, int k_max);

/// `subset;probability;is_clique;weight`, preceded by a normalization tag.
void write_distribution_csv(std::ostream& out, const SubsetDistribution& d, const Graph& g);

double binomial_coefficient(int n, int k);

}  // namespace dgbs
