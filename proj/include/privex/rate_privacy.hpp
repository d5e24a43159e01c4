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
#include <optional>
#include <string>
#include <vector>

#include "privex/filters.hpp"
#include "privex/prob.hpp"

namespace privex {

struct SolverConfig {
  int restarts = 50;
  int z_cardinality = 0;  // 0 means |Y| + 1
  int max_iters = 250;
  int penalty_stages = 4;
  double penalty_init = 8.0;
  double penalty_growth = 6.0;
  double step_init = 0.5;
  std::uint64_t master_seed = 1;
  double tolerance = 1e-9;
  int threads = 0;  // 0 means hardware concurrency
};

/// One point of the extraction-vs-leakage trade-off. `value` is the best
/// certified feasible I(Y;Z); `filter` is the certificate achieving it with
/// `achieved_leakage` (I(X;Z) bits, or rho_m^2(X;Z) for the correlation
/// variant).
struct RatePrivacyPoint {
  double epsilon;
  double lower;
  double value;
  double upper;
  Channel filter;
  double achieved_leakage;
};

struct BoundsG {
  double lower;
  double upper;
};

/// Straight-line envelope around the optimum: lower from the erasure filter
/// plus the zero-leakage chord, upper from H(Y|X)+eps, H(Y), and a
/// symmetric-channel refinement when it applies.
BoundsG bounds_g(const JointDistribution& joint, double eps,
                 const SolverConfig& config = {});
BoundsG bounds_g_with_g0(const JointDistribution& joint, double eps,
                         double g0_value);

struct G0Result {
  double value;
  Channel filter;
};

/// Information extractable with (numerically) zero leakage about X.
G0Result g0(const JointDistribution& joint, const SolverConfig& config = {});

/// Best certified filter with I(X;Z) <= eps.
RatePrivacyPoint solve_g(const JointDistribution& joint, double eps,
                         const SolverConfig& config = {});

/// Best certified filter with rho_m^2(X;Z) <= eps, eps in [0,1].
RatePrivacyPoint solve_g_hat(const JointDistribution& joint, double eps,
                             const SolverConfig& config = {});

enum class ClosedFormKind { SymmetricBinaryUniform, ErasureObservation };

struct ClosedFormResult {
  ClosedFormKind kind;
  double value;
};

/// Exact value when the joint matches one of the two solved families:
/// symmetric-output reverse channel with uniform binary Y, or an erasure
/// observation channel.
std::optional<ClosedFormResult> closed_form(const JointDistribution& joint,
                                            double eps);

/// Binary-input channel whose rows are permutations of each other under the
/// output pairing x <-> -x (zero column allowed to self-pair).
bool detect_biso(const Channel& reverse_channel, double tol = 1e-9);

/// Erasure probability if the channel passes its input through with
/// probability 1-delta and emits one shared symbol otherwise.
std::optional<double> detect_erasure(const Channel& forward_channel,
                                     double tol = 1e-9);

struct SlopeBound {
  double bound;  // bits of extraction per bit of leakage; +inf flagged
  std::string argmax_y;
};

/// Lower bound on the slope of the trade-off at eps = 0:
/// max_y (-log2 P_Y(y)) / D(P_{X|Y}(.|y) || P_X).
SlopeBound slope_bound_at_zero(const JointDistribution& joint);

enum class LinearityVerdict { Linear, LinearPossible, NotLinear };

struct LinearityResult {
  LinearityVerdict verdict;
  std::vector<double> ratios;  // per y symbol
};

/// Whether the trade-off can be the straight line eps*H(Y)/I: NotLinear when
/// the per-y slope ratios disagree; Linear when the reverse channel is
/// symmetric-binary and Y is uniform.
LinearityResult linearity_test(const JointDistribution& joint);

std::vector<RatePrivacyPoint> curve_g(const JointDistribution& joint,
                                      const std::vector<double>& eps_grid,
                                      const SolverConfig& config = {});

/// Smallest leakage budget under which at least R bits are extractable
/// (functional inverse of the trade-off); bisection to 1e-4 on eps.
double funnel_dual(const JointDistribution& joint, double rate,
                   const SolverConfig& config = {});

/// Minimal information about X revealed by any scheme that reveals delta_a
/// bits about Y; equals funnel_dual(delta_a).
double dilution_outer(const JointDistribution& joint, double delta_a,
                      const SolverConfig& config = {});

}  // namespace privex
