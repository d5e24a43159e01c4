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

#include <cstdint>
#include <map>
#include <vector>

#include "privex/errors.hpp"

namespace privex {

/// Jointly Gaussian (X, Y), zero mean; everything is parameterized by the
/// squared correlation and var(Y). Degenerate and independent pairs are
/// rejected.
struct GaussianPair {
  double rho2;
  double var_y;

  static GaussianPair make(double rho2, double var_y);
};

struct QuantizerConfig {
  int quad_nodes = 64;       // doubled once for the convergence check
  double tail_mass = 1e-10;  // certified truncation tail
  int gamma_grid_points = 200;
  double gamma_min_factor = 1e-3;  // times sqrt(var_y)
  double gamma_max_factor = 1e3;
  int refine_points = 20;  // frontier bisection steps after the grid pass
};

/// I(X;Y) = -1/2 log2(1 - rho2), bits.
double mutual_info_gaussian(const GaussianPair& pair);

/// Extraction through the optimal additive-Gaussian filter with leakage
/// budget eps bits: 1/2 log2(rho2 / (2^(-2 eps) + rho2 - 1)).
double g_gaussian(const GaussianPair& pair, double eps);

/// Same with the squared-correlation budget eps in [0, rho2):
/// 1/2 log2(rho2 / (rho2 - eps)).
double g_hat_gaussian(const GaussianPair& pair, double eps);

/// Smallest feasible additive-noise standard deviation for budget eps.
double gamma_star(const GaussianPair& pair, double eps);

/// var(Y) 2^(-2 g): no filter meeting the budget lets Y be estimated with
/// smaller mean-squared error.
double mmse_lower_bound(const GaussianPair& pair, double eps);

enum class Conditioning { None, GivenY, GivenX };

/// Cell probabilities of the M-bit quantized noisy output Q_M(Y + gamma N),
/// keyed by cell index k (cell = [k 2^-M, (k+1) 2^-M)). Truncated with total
/// tail mass certified below config.tail_mass. For GivenX the conditioning
/// value is in units of std(X) = 1.
std::map<long long, double> quantized_cell_probs(const GaussianPair& pair,
                                                 double gamma, int M,
                                                 Conditioning cond,
                                                 double cond_value,
                                                 const QuantizerConfig& config = {});

struct QuantizedMutualInfo {
  double i_xz;
  double i_yz;
};

/// I(X;Z) and I(Y;Z) for Z = Q_M(Y + gamma N) via Gauss-Hermite quadrature
/// over the conditioning variable.
QuantizedMutualInfo mutual_info_quantized(const GaussianPair& pair,
                                          double gamma, int M,
                                          const QuantizerConfig& config = {});

struct QuantizedPoint {
  double value;  // bits
  double gamma;
};

/// Best extraction over the noise-level grid subject to I(X;Z) <= eps.
QuantizedPoint g_eps_M(const GaussianPair& pair, double eps, int M,
                       const QuantizerConfig& config = {});

struct ConvergenceRow {
  int M;
  double value;
  double gamma;
  double gap;              // |value - g_gaussian|
  double h_qm_minus_m;     // H(Q_M(Z)) - M at the final chosen gamma
};

/// Per-M table showing g_eps_M approaching the closed form, plus the
/// quantizer-entropy diagnostic H(Q_M) - M which must be non-increasing.
std::vector<ConvergenceRow> convergence_report(const GaussianPair& pair,
                                               double eps,
                                               const std::vector<int>& m_list,
                                               const QuantizerConfig& config = {});

}  // namespace privex
