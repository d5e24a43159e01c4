// Copyright 2026 The Privex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "privex/prob.hpp"

namespace privex {

/// SVD of B[x,y] = P_{XY}(x,y)/sqrt(P_X(x) P_Y(y)). The leading singular
/// value is 1 (constant functions); the second is the maximal correlation.
struct SpectralDecomposition {
  std::vector<double> singular_values;           // descending
  std::vector<std::vector<double>> left;         // columns over X, one per value
  std::vector<std::vector<double>> right;        // columns over Y
};

SpectralDecomposition spectral_decomposition(const JointDistribution& joint);

/// Hirschfeld-Gebelein-Renyi maximal correlation, computed spectrally.
/// Returns 0 when either marginal is degenerate (single symbol).
double maximal_correlation(const JointDistribution& joint);

struct WeakIndependenceResult {
  bool weakly_independent;
  int rank;  // rank of the |Y| x |X| matrix of rows P_{X|Y}(.|y)
};

WeakIndependenceResult weak_independence(const JointDistribution& joint,
                                         double rank_threshold = 1e-9);

/// Poincare constant: 1 - rho_m^2(X;Y).
double poincare_constant(const JointDistribution& joint);

/// E[var(f(X)|Z)] for a real-valued f on the X alphabet of an (X,Z) joint.
/// ConstantFunction if var(f(X)) vanishes.
double mmse_discrete(const std::vector<double>& f,
                     const JointDistribution& joint_xz);

/// True iff every non-degenerate f satisfies
/// (1-eps) var(f(X)) <= mmse(f(X)|Z); equivalently rho_m^2(X;Z) <= eps.
bool mmse_privacy_band(const JointDistribution& joint_xz, double eps);

namespace detail {
/// rho_m of a raw nonnegative matrix (normalized internally, no mass checks);
/// used where optimizer iterates perturb the joint off the simplex.
double rho_m_of_matrix(const std::vector<std::vector<double>>& pxy);
}  // namespace detail

}  // namespace privex
