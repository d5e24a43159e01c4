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

#include "privex/filters.hpp"

#include <algorithm>
#include <cmath>

#include "privex/dependence.hpp"

namespace privex {

std::string erasure_label(const std::vector<std::string>& y_labels) {
  bool taken =
      std::find(y_labels.begin(), y_labels.end(), "e") != y_labels.end();
  return taken ? "e#" : "e";
}

Channel erasure_filter(const JointDistribution& joint, double eps) {
  double info = mutual_information(joint);
  if (info < 1e-12)
    fail(ErrorCode::IndependentSources, "erasure_filter: I(X;Y) = 0");
  if (eps < -1e-12 || eps > info + 1e-12)
    fail(ErrorCode::EpsilonOutOfRange, "erasure_filter: eps outside [0, I]");
  double delta = 1.0 - std::clamp(eps, 0.0, info) / info;
  std::size_t ny = joint.ny();
  std::vector<std::string> out = joint.y_labels;
  out.push_back(erasure_label(joint.y_labels));
  std::vector<std::vector<double>> rows(ny, std::vector<double>(ny + 1, 0.0));
  for (std::size_t j = 0; j < ny; ++j) {
    rows[j][j] = 1.0 - delta;
    rows[j][ny] = delta;
  }
  return Channel{joint.y_labels, std::move(out), std::move(rows)};
}

Channel erasure_wrapper(const Channel& filter, double delta) {
  if (delta < -1e-12 || delta > 1.0 + 1e-12)
    fail(ErrorCode::DeltaOutOfRange, "erasure_wrapper: delta outside [0,1]");
  delta = std::clamp(delta, 0.0, 1.0);
  std::vector<std::string> out = filter.out_labels;
  out.push_back(erasure_label(filter.out_labels));
  std::vector<std::vector<double>> rows(filter.n_in());
  for (std::size_t i = 0; i < filter.n_in(); ++i) {
    rows[i].resize(filter.n_out() + 1);
    for (std::size_t z = 0; z < filter.n_out(); ++z)
      rows[i][z] = (1.0 - delta) * filter.rows[i][z];
    rows[i][filter.n_out()] = delta;
  }
  return Channel{filter.in_labels, std::move(out), std::move(rows)};
}

Channel singleton_probe_filter(const JointDistribution& joint,
                               const std::string& k, double delta) {
  auto it = std::find(joint.y_labels.begin(), joint.y_labels.end(), k);
  if (it == joint.y_labels.end())
    fail(ErrorCode::UnknownSymbol, "singleton_probe_filter: unknown y symbol");
  if (delta <= 0.0 || delta > 1.0 + 1e-12)
    fail(ErrorCode::DeltaOutOfRange,
         "singleton_probe_filter: delta outside (0,1]");
  delta = std::min(delta, 1.0);
  std::size_t ki = static_cast<std::size_t>(it - joint.y_labels.begin());
  std::vector<std::string> out{k, erasure_label(joint.y_labels)};
  std::vector<std::vector<double>> rows(joint.ny(), {0.0, 1.0});
  rows[ki] = {delta, 1.0 - delta};
  return Channel{joint.y_labels, std::move(out), std::move(rows)};
}

double bec_bsc_filter_alpha(double eps, double delta, double p) {
  if (delta <= 0.0 || delta >= 1.0)
    fail(ErrorCode::OutOfRange, "bec_bsc_filter_alpha: delta outside (0,1)");
  if (p <= 0.0 || p > 0.5)
    fail(ErrorCode::OutOfRange, "bec_bsc_filter_alpha: p outside (0, 0.5]");
  double cap = (1.0 - delta) * binary_entropy(p);
  if (eps < -1e-12 || eps > cap + 1e-12)
    fail(ErrorCode::EpsilonOutOfRange,
         "bec_bsc_filter_alpha: eps outside [0, (1-delta) h_b(p)]");
  eps = std::clamp(eps, 0.0, cap);
  auto convolve = [](double a, double b) {
    return a * (1.0 - b) + b * (1.0 - a);
  };
  auto leak = [&](double alpha) {
    return (1.0 - delta) *
           (binary_entropy(convolve(alpha, p)) - binary_entropy(alpha));
  };
  // leak is strictly decreasing on [0, 1/2]: leak(0) = cap, leak(1/2) = 0.
  double lo = 0.0, hi = 0.5;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (leak(mid) > eps) lo = mid;
    else hi = mid;
    if (hi - lo < 1e-10) break;
  }
  return 0.5 * (lo + hi);
}

LeakageReport audit_filter(const JointDistribution& joint,
                           const Channel& filter, double eps_mi,
                           double eps_mc) {
  auto [pxz, pyz] = push_joint(joint, filter);
  LeakageReport r;
  r.i_xz = mutual_information(pxz);
  r.i_yz = mutual_information(pyz);
  double rho = maximal_correlation(pxz);
  r.rho2_xz = rho * rho;
  r.feasible_mi = r.i_xz <= eps_mi + 1e-9;
  r.feasible_mc = r.rho2_xz <= eps_mc + 1e-9;
  return r;
}

}  // namespace privex
