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

#include "privex/dependence.hpp"
#include "privex/prob.hpp"
#include "privex/verify.hpp"

using namespace privex;

namespace {

JointDistribution bsc_joint(double p, double alpha) {
  return JointDistribution::make(
      {"0", "1"}, {"0", "1"},
      {{(1 - p) * (1 - alpha), (1 - p) * alpha},
       {p * alpha, p * (1 - alpha)}});
}

}  // namespace

TEST_CASE("maximal_correlation_binary_closed_form") {
  // For a doubly binary joint, rho_m equals |Pearson correlation| of the
  // indicator variables.
  double p = 0.3, alpha = 0.2;
  auto joint = bsc_joint(p, alpha);
  auto m = marginals(joint);
  double ex = m.px.p[1], ey = m.py.p[1];
  double exy = joint.pxy[1][1];
  double pearson = (exy - ex * ey) /
                   std::sqrt(ex * (1 - ex) * ey * (1 - ey));
  CHECK(maximal_correlation(joint) ==
        doctest::Approx(std::abs(pearson)).epsilon(1e-10));
}

TEST_CASE("maximal_correlation_uniform_bsc") {
  auto joint = bsc_joint(0.5, 0.25);
  CHECK(maximal_correlation(joint) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("maximal_correlation_independent_is_zero") {
  auto joint = JointDistribution::make({"0", "1"}, {"0", "1", "2"},
                                       {{0.2, 0.1, 0.1}, {0.3, 0.15, 0.15}});
  CHECK(maximal_correlation(joint) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("spectral_leading_value_is_one") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    auto joint = verify::random_joint(3, 4, rng);
    auto spec = spectral_decomposition(joint);
    REQUIRE(!spec.singular_values.empty());
    CHECK(spec.singular_values[0] == doctest::Approx(1.0).epsilon(1e-10));
    double rho = maximal_correlation(joint);
    CHECK(rho >= 0.0);
    CHECK(rho <= 1.0 + 1e-12);
  }
}

TEST_CASE("maximal_correlation_matches_variational") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    auto joint = verify::random_joint(3, 3, rng);
    double spectral = maximal_correlation(joint);
    double brute = verify::variational_max_correlation(joint, 8, 500, 17 + t);
    CHECK(spectral == doctest::Approx(brute).epsilon(1e-6));
  }
}

TEST_CASE("weak_independence_rank") {
  // |Y| > |X| forces linearly dependent reverse rows.
  auto wide = JointDistribution::make(
      {"0", "1"}, {"0", "1", "2"},
      {{0.25, 0.05, 0.1}, {0.05, 0.3, 0.25}});
  auto w = weak_independence(wide);
  CHECK(w.weakly_independent);
  CHECK(w.rank == 2);

  // Dependent binary pair: rows of P_{X|Y} differ, full rank.
  auto binary = bsc_joint(0.3, 0.2);
  auto wb = weak_independence(binary);
  CHECK(!wb.weakly_independent);
  CHECK(wb.rank == 2);

  // Independent pair: all reverse rows equal, rank 1.
  auto indep = JointDistribution::make({"0", "1"}, {"0", "1"},
                                       {{0.12, 0.28}, {0.18, 0.42}});
  auto wi = weak_independence(indep);
  CHECK(wi.weakly_independent);
  CHECK(wi.rank == 1);
}

TEST_CASE("poincare_constant_matches_mmse_ratio") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 5; ++t) {
    auto joint = verify::random_joint(3, 3, rng);
    double theta = poincare_constant(joint);
    double brute = verify::min_mmse_ratio(joint, 12, 31 + t);
    CHECK(theta == doctest::Approx(brute).epsilon(1e-6));
  }
}

TEST_CASE("mmse_discrete_exact_small_case") {
  // X uniform binary, Z = X noisy through BSC(0.1); f = identity scores.
  auto joint = bsc_joint(0.5, 0.1);
  std::vector<double> f{0.0, 1.0};
  double mmse = mmse_discrete(f, joint);
  // var(f(X)) = 1/4; E[var(X|Z)] = alpha(1-alpha) for symmetric case.
  CHECK(mmse == doctest::Approx(0.1 * 0.9).epsilon(1e-12));
  CHECK_THROWS_AS(mmse_discrete(std::vector<double>{2.0, 2.0}, joint), Error);
}

TEST_CASE("mmse_privacy_band_threshold") {
  auto joint = bsc_joint(0.5, 0.25);
  double rho2 = 0.25;
  CHECK(mmse_privacy_band(joint, rho2 + 1e-6));
  CHECK(!mmse_privacy_band(joint, rho2 - 1e-3));
}
