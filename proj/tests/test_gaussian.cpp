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

#include "privex/errors.hpp"
#include "privex/gaussian.hpp"

using namespace privex;

TEST_CASE("gaussian_pair_validation") {
  CHECK_THROWS_AS(GaussianPair::make(0.0, 1.0), Error);
  CHECK_THROWS_AS(GaussianPair::make(1.0, 1.0), Error);
  CHECK_THROWS_AS(GaussianPair::make(0.5, 0.0), Error);
  auto pair = GaussianPair::make(0.5, 2.0);
  CHECK(pair.rho2 == 0.5);
}

TEST_CASE("gaussian_mutual_information") {
  auto pair = GaussianPair::make(0.75, 1.0);
  CHECK(mutual_info_gaussian(pair) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("g_gaussian_closed_form_values") {
  auto pair = GaussianPair::make(0.75, 1.0);
  CHECK(g_gaussian(pair, 0.5) ==
        doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-13));
  CHECK(g_gaussian(pair, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(g_gaussian(pair, mutual_info_gaussian(pair)), Error);

  auto half = GaussianPair::make(0.5, 0.25);
  CHECK(g_hat_gaussian(half, 0.25) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK_THROWS_AS(g_hat_gaussian(half, 0.5), Error);
}

TEST_CASE("gamma_star_achieves_budget") {
  auto pair = GaussianPair::make(0.75, 2.0);
  double eps = 0.3;
  double gamma = gamma_star(pair, eps);
  // Leakage of the additive filter: 1/2 log2((var_y + g^2) / ((1-rho2) var_y + g^2)).
  double leak = 0.5 * std::log2((pair.var_y + gamma * gamma) /
                                ((1 - pair.rho2) * pair.var_y + gamma * gamma));
  CHECK(leak == doctest::Approx(eps).epsilon(1e-10));
}

TEST_CASE("mmse_bound_matches_value") {
  auto pair = GaussianPair::make(0.75, 2.0);
  double eps = 0.3;
  CHECK(mmse_lower_bound(pair, eps) ==
        doctest::Approx(pair.var_y *
                        std::exp2(-2.0 * g_gaussian(pair, eps)))
            .epsilon(1e-12));
}

TEST_CASE("quantized_cells_sum_to_one") {
  auto pair = GaussianPair::make(0.5, 1.0);
  for (int M : {2, 4}) {
    auto cells = quantized_cell_probs(pair, 0.8, M, Conditioning::None, 0.0);
    double total = 0.0;
    for (const auto& [k, p] : cells) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("quantized_mutual_info_data_processing") {
  auto pair = GaussianPair::make(0.5, 1.0);
  auto mi = mutual_info_quantized(pair, 0.8, 4);
  CHECK(mi.i_xz >= 0.0);
  CHECK(mi.i_yz >= mi.i_xz - 1e-9);
  CHECK(mi.i_xz <= mutual_info_gaussian(pair) + 1e-9);

  // More noise leaks less.
  auto noisier = mutual_info_quantized(pair, 1.6, 4);
  CHECK(noisier.i_xz < mi.i_xz);
}

TEST_CASE("g_eps_m_feasible_and_below_closed_form") {
  auto pair = GaussianPair::make(0.5, 1.0);
  double eps = 0.2;
  QuantizerConfig config;
  config.gamma_grid_points = 60;
  auto point = g_eps_M(pair, eps, 4, config);
  auto mi = mutual_info_quantized(pair, point.gamma, 4, config);
  CHECK(mi.i_xz <= eps + 1e-9);
  CHECK(point.value > 0.0);
  CHECK(point.value < g_gaussian(pair, eps));
}
