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
#include "privex/rate_privacy.hpp"
#include "privex/verify.hpp"

using namespace privex;

namespace {

SolverConfig fast_config() {
  SolverConfig config;
  config.restarts = 12;
  config.threads = 1;
  return config;
}

JointDistribution bsc_uniform(double alpha) {
  return JointDistribution::make(
      {"0", "1"}, {"0", "1"},
      {{(1 - alpha) / 2, alpha / 2}, {alpha / 2, (1 - alpha) / 2}});
}

JointDistribution erasure_observation(double delta) {
  // X uniform binary observed through an erasure channel.
  return JointDistribution::make(
      {"0", "1"}, {"0", "1", "e"},
      {{(1 - delta) / 2, 0.0, delta / 2}, {0.0, (1 - delta) / 2, delta / 2}});
}

}  // namespace

TEST_CASE("bsc_uniform_matches_linear_closed_form") {
  auto joint = bsc_uniform(0.25);
  double i_xy = mutual_information(joint);
  auto config = fast_config();
  for (double frac : {0.2, 0.5, 0.8}) {
    double eps = frac * i_xy;
    auto point = solve_g(joint, eps, config);
    CHECK(point.value == doctest::Approx(eps / i_xy).epsilon(5e-3));
    CHECK(point.lower <= point.value + 1e-9);
    CHECK(point.value <= point.upper + 1e-9);
    auto rep = audit_filter(joint, point.filter, eps, 1.0);
    CHECK(rep.i_xz <= eps + 1e-9);
  }
  auto cf = closed_form(joint, 0.5 * i_xy);
  REQUIRE(cf.has_value());
  CHECK(cf->kind == ClosedFormKind::SymmetricBinaryUniform);
  CHECK(cf->value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("erasure_observation_matches_closed_form") {
  auto joint = erasure_observation(0.3);
  double i_xy = mutual_information(joint);
  double hyx = conditional_entropy(joint);
  auto config = fast_config();
  for (double frac : {0.3, 0.7}) {
    double eps = frac * i_xy;
    auto point = solve_g(joint, eps, config);
    CHECK(point.value == doctest::Approx(hyx + eps).epsilon(5e-3));
  }
  auto cf = closed_form(joint, 0.5 * i_xy);
  REQUIRE(cf.has_value());
  CHECK(cf->kind == ClosedFormKind::ErasureObservation);
  CHECK(cf->value == doctest::Approx(hyx + 0.5 * i_xy).epsilon(1e-12));
}

TEST_CASE("g0_dichotomy") {
  // Binary dependent Y: nothing extractable at zero leakage.
  auto dependent = bsc_uniform(0.2);
  auto z = g0(dependent, fast_config());
  CHECK(z.value <= 1e-9);

  // |Y| = |X| + 1 forces weak independence and positive extraction.
  auto wide = JointDistribution::make(
      {"0", "1"}, {"0", "1", "2"},
      {{0.25, 0.05, 0.15}, {0.05, 0.3, 0.2}});
  auto w = g0(wide, fast_config());
  CHECK(w.value > 1e-3);
  auto rep = audit_filter(wide, w.filter, 1e-9, 1.0);
  CHECK(rep.i_xz <= 1e-9);
  CHECK(rep.i_yz == doctest::Approx(w.value).epsilon(1e-9));
}

TEST_CASE("erasure_observation_g0_is_conditional_entropy") {
  auto joint = erasure_observation(0.3);
  auto z = g0(joint, fast_config());
  CHECK(z.value == doctest::Approx(binary_entropy(0.3)).epsilon(1e-9));
  auto rep = audit_filter(joint, z.filter, 1e-9, 1.0);
  CHECK(rep.i_xz <= 1e-9);
}

TEST_CASE("bounds_sandwich_random_joints") {
  std::mt19937_64 rng(41);
  auto config = fast_config();
  for (int t = 0; t < 6; ++t) {
    auto joint = verify::random_joint(2 + t % 2, 2 + (t + 1) % 3, rng);
    double i_xy = mutual_information(joint);
    for (double frac : {0.25, 0.75}) {
      double eps = frac * i_xy;
      auto point = solve_g(joint, eps, config);
      CHECK(point.lower - 1e-6 <= point.value);
      CHECK(point.value <= point.upper + 1e-6);
      auto rep = audit_filter(joint, point.filter, eps, 1.0);
      CHECK(rep.i_xz <= eps + 1e-9);
    }
  }
}

TEST_CASE("solve_g_epsilon_edge_cases") {
  auto joint = bsc_uniform(0.25);
  double i_xy = mutual_information(joint);
  auto saturated = solve_g(joint, i_xy + 0.1, fast_config());
  CHECK(saturated.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(solve_g(joint, -0.1, fast_config()), Error);
  CHECK_THROWS_AS(solve_g_hat(joint, 1.5, fast_config()), Error);
}

TEST_CASE("solve_g_hat_feasible_and_bounded") {
  auto joint = bsc_uniform(0.25);
  double rho2 = 0.25;
  auto config = fast_config();
  for (double frac : {0.3, 0.7}) {
    double eps = frac * rho2;
    auto point = solve_g_hat(joint, eps, config);
    auto rep = audit_filter(joint, point.filter, 10.0, eps);
    CHECK(rep.rho2_xz <= eps + 1e-9);
    CHECK(point.value == doctest::Approx(rep.i_yz).epsilon(1e-9));
    CHECK(point.lower - 1e-6 <= point.value);
    CHECK(point.value <= point.upper + 1e-6);
  }
}

TEST_CASE("detect_biso_and_erasure") {
  auto bsc = bsc_uniform(0.25);
  auto m = marginals(bsc);
  CHECK(detect_biso(m.x_given_y));
  CHECK(detect_biso(m.y_given_x));

  auto skew = JointDistribution::make({"0", "1"}, {"0", "1"},
                                      {{0.56, 0.14}, {0.06, 0.24}});
  CHECK(!detect_biso(marginals(skew).x_given_y));

  auto erasure = erasure_observation(0.3);
  auto fwd = marginals(erasure).y_given_x;
  auto d = detect_erasure(fwd);
  REQUIRE(d.has_value());
  CHECK(*d == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(!detect_erasure(marginals(skew).y_given_x).has_value());
}

TEST_CASE("slope_bound_at_zero_bsc") {
  auto joint = bsc_uniform(0.25);
  auto slope = slope_bound_at_zero(joint);
  double i_xy = mutual_information(joint);
  // Uniform binary Y: both symbols give 1 / D(P_{X|Y=y} || P_X) = 1 / I.
  CHECK(slope.bound == doctest::Approx(1.0 / i_xy).epsilon(1e-9));
}

TEST_CASE("linearity_verdicts") {
  CHECK(linearity_test(bsc_uniform(0.25)).verdict ==
        LinearityVerdict::Linear);
  auto skew = JointDistribution::make({"0", "1"}, {"0", "1"},
                                      {{0.56, 0.14}, {0.06, 0.24}});
  CHECK(linearity_test(skew).verdict == LinearityVerdict::NotLinear);
}

TEST_CASE("curve_is_monotone_and_funnel_inverts") {
  auto joint = bsc_uniform(0.25);
  double i_xy = mutual_information(joint);
  auto config = fast_config();
  std::vector<double> grid{0.2 * i_xy, 0.5 * i_xy, 0.8 * i_xy};
  auto curve = curve_g(joint, grid, config);
  REQUIRE(curve.size() == 3);
  CHECK(curve[0].value <= curve[1].value + 1e-9);
  CHECK(curve[1].value <= curve[2].value + 1e-9);

  double rate = 0.5;
  double eps = funnel_dual(joint, rate, config);
  CHECK(eps == doctest::Approx(rate * i_xy).epsilon(2e-3));
  CHECK(dilution_outer(joint, rate, config) == doctest::Approx(eps));
}
