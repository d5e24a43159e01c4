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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "privex/filters.hpp"
#include "privex/prob.hpp"
#include "privex/verify.hpp"

using namespace privex;

TEST_CASE("erasure_label_avoids_collision") {
  CHECK(erasure_label({"0", "1"}) == "e");
  CHECK(erasure_label({"0", "e"}) == "e#");
}

TEST_CASE("erasure_filter_hits_budget") {
  auto joint = JointDistribution::make({"0", "1"}, {"0", "1"},
                                       {{0.375, 0.125}, {0.125, 0.375}});
  double i_xy = mutual_information(joint);
  for (double frac : {0.25, 0.5, 0.75}) {
    double eps = frac * i_xy;
    auto filter = erasure_filter(joint, eps);
    auto report = audit_filter(joint, filter, eps, 1.0);
    CHECK(report.i_xz == doctest::Approx(eps).epsilon(1e-12));
    CHECK(report.feasible_mi);
    auto m = marginals(joint);
    CHECK(report.i_yz ==
          doctest::Approx(frac * entropy(m.py)).epsilon(1e-12));
  }
}

TEST_CASE("erasure_wrapper_scales_all_leakage") {
  std::mt19937_64 rng(5);
  auto joint = verify::random_joint(3, 3, rng);
  auto raw = verify::random_channel(3, 4, rng);
  auto filter = Channel::make(joint.y_labels, raw.out_labels, raw.rows);
  auto base = audit_filter(joint, filter, 1.0, 1.0);
  for (double delta : {0.3, 0.7}) {
    auto wrapped = erasure_wrapper(filter, delta);
    auto rep = audit_filter(joint, wrapped, 1.0, 1.0);
    CHECK(rep.i_xz == doctest::Approx((1 - delta) * base.i_xz).epsilon(1e-10));
    CHECK(rep.i_yz == doctest::Approx((1 - delta) * base.i_yz).epsilon(1e-10));
    CHECK(rep.rho2_xz ==
          doctest::Approx((1 - delta) * base.rho2_xz).epsilon(1e-8));
  }
}

TEST_CASE("singleton_probe_filter_shape") {
  auto joint = JointDistribution::make({"0", "1"}, {"a", "b", "c"},
                                       {{0.2, 0.1, 0.2}, {0.1, 0.2, 0.2}});
  auto probe = singleton_probe_filter(joint, "b", 0.6);
  REQUIRE(probe.n_out() == 2);
  CHECK(probe.out_labels[0] == "b");
  // P(b|b) = delta, P(b|y) = 0 otherwise.
  CHECK(probe.rows[1][0] == doctest::Approx(0.6));
  CHECK(probe.rows[0][0] == doctest::Approx(0.0));
  CHECK(probe.rows[2][0] == doctest::Approx(0.0));
  auto rep = audit_filter(joint, probe, 1.0, 1.0);
  CHECK(rep.i_xz > 0.0);
  CHECK(rep.i_yz > 0.0);
}

TEST_CASE("bec_bsc_alpha_solves_budget_equation") {
  double delta = 0.4, p = 0.5;
  double cap = (1 - delta) * binary_entropy(p);
  for (double frac : {0.2, 0.6, 0.9}) {
    double eps = frac * cap;
    double alpha = bec_bsc_filter_alpha(eps, delta, p);
    double lhs =
        (1 - delta) * (binary_entropy(alpha + p - 2 * alpha * p) -
                       binary_entropy(alpha));
    CHECK(lhs == doctest::Approx(eps).epsilon(1e-8));
    CHECK(alpha >= 0.0);
    CHECK(alpha <= 0.5);
  }
}

TEST_CASE("bec_bsc_alpha_monotone_in_eps") {
  double delta = 0.3, p = 0.4;
  double prev = 1.0;
  for (double eps : {0.05, 0.15, 0.3}) {
    double alpha = bec_bsc_filter_alpha(eps, delta, p);
    CHECK(alpha < prev);
    prev = alpha;
  }
}

TEST_CASE("audit_filter_feasibility_flags") {
  auto joint = JointDistribution::make({"0", "1"}, {"0", "1"},
                                       {{0.375, 0.125}, {0.125, 0.375}});
  auto id = Channel::identity(joint.y_labels);
  double i_xy = mutual_information(joint);
  auto rep = audit_filter(joint, id, i_xy + 1e-6, 1.0);
  CHECK(rep.feasible_mi);
  auto tight = audit_filter(joint, id, i_xy / 2, 0.1);
  CHECK(!tight.feasible_mi);
  CHECK(!tight.feasible_mc);
}
