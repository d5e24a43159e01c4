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

#include <string>

#include "privex/prob.hpp"

namespace privex {

struct LeakageReport {
  double i_xz;      // bits
  double i_yz;      // bits
  double rho2_xz;   // squared maximal correlation, unitless
  bool feasible_mi;
  bool feasible_mc;
};

/// Label used for the erased output symbol; "e#" if the Y alphabet already
/// contains "e".
std::string erasure_label(const std::vector<std::string>& y_labels);

/// Pass Y through with probability 1 - delta, else emit the erasure symbol,
/// with delta = 1 - eps/I(X;Y). The result leaks exactly eps bits about X.
Channel erasure_filter(const JointDistribution& joint, double eps);

/// Post-compose a filter with a delta-erasure stage on its output. Scales
/// I(X;Z), I(Y;Z) and rho_m^2(X;Z) each by exactly 1 - delta.
Channel erasure_wrapper(const Channel& filter, double delta);

/// Two-output channel Y -> {k, e} with P(k|y) = delta when y = k.
Channel singleton_probe_filter(const JointDistribution& joint,
                               const std::string& k, double delta);

/// Crossover alpha of the output-side BSC that extracts exactly eps bits
/// through a BEC(delta) observation of X ~ Ber(p): solves
/// (1-delta)(h_b(alpha*p) - h_b(alpha)) = eps on [0, 1/2].
double bec_bsc_filter_alpha(double eps, double delta, double p);

LeakageReport audit_filter(const JointDistribution& joint,
                           const Channel& filter, double eps_mi,
                           double eps_mc);

}  // namespace privex
