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
#include <limits>

#include "privex/errors.hpp"
#include "privex/prob.hpp"

using namespace privex;

TEST_CASE("prob_vector_normalizes_and_rejects") {
  auto p = ProbVector::make({"a", "b"}, {0.5 + 2e-10, 0.5});
  CHECK(std::abs(p.p[0] + p.p[1] - 1.0) < 1e-15);
  CHECK_THROWS_AS(ProbVector::make({"a", "b"}, {0.6, 0.6}), Error);
  CHECK_THROWS_AS(ProbVector::make({"a", "b"}, {1.2, -0.2}), Error);
  CHECK_THROWS_AS(ProbVector::make({"a"}, {0.5, 0.5}), Error);
}

TEST_CASE("joint_strips_degenerate_symbols") {
  auto joint = JointDistribution::make({"0", "1", "2"}, {"0", "1"},
                                       {{0.5, 0.25}, {0.0, 0.0}, {0.1, 0.15}});
  CHECK(joint.nx() == 2);
  CHECK(joint.ny() == 2);
  REQUIRE(joint.stripped_x.size() == 1);
  CHECK(joint.stripped_x[0] == "1");
}

TEST_CASE("entropy_and_mutual_information_bsc") {
  double alpha = 0.25;
  auto joint = JointDistribution::make(
      {"0", "1"}, {"0", "1"},
      {{(1 - alpha) / 2, alpha / 2}, {alpha / 2, (1 - alpha) / 2}});
  auto m = marginals(joint);
  CHECK(entropy(m.px) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entropy(m.py) == doctest::Approx(1.0).epsilon(1e-12));
  double expect_i = 1.0 - binary_entropy(alpha);
  CHECK(mutual_information(joint) == doctest::Approx(expect_i).epsilon(1e-12));
  CHECK(conditional_entropy(joint) ==
        doctest::Approx(binary_entropy(alpha)).epsilon(1e-12));
  CHECK(joint_entropy(joint) ==
        doctest::Approx(1.0 + binary_entropy(alpha)).epsilon(1e-12));
}

TEST_CASE("kl_divergence_support_and_values") {
  std::vector<double> p{0.5, 0.5};
  std::vector<double> q{0.25, 0.75};
  double d = kl_divergence(p, q);
  double expect = 0.5 * std::log2(0.5 / 0.25) + 0.5 * std::log2(0.5 / 0.75);
  CHECK(d == doctest::Approx(expect).epsilon(1e-12));
  CHECK(kl_divergence(p, p) == doctest::Approx(0.0));
  std::vector<double> r{1.0, 0.0};
  CHECK(std::isinf(kl_divergence(p, r)));
  CHECK(kl_divergence(r, p) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("binary_entropy_inverse_round_trip") {
  for (double a : {0.01, 0.1, 0.25, 0.4}) {
    CHECK(binary_entropy_inv(binary_entropy(a)) ==
          doctest::Approx(a).epsilon(1e-9));
  }
  // The inverse is ill-conditioned at the top of the range; allow sqrt-scale
  // error there.
  CHECK(binary_entropy_inv(binary_entropy(0.5)) ==
        doctest::Approx(0.5).epsilon(1e-5));
  CHECK(binary_entropy_inv(0.0) == doctest::Approx(0.0));
  CHECK(binary_entropy_inv(1.0) == doctest::Approx(0.5));
}

TEST_CASE("compose_matches_matrix_product") {
  auto first = Channel::make({"0", "1"}, {"a", "b", "c"},
                             {{0.2, 0.3, 0.5}, {0.6, 0.1, 0.3}});
  auto second = Channel::make({"a", "b", "c"}, {"u", "v"},
                              {{1.0, 0.0}, {0.5, 0.5}, {0.25, 0.75}});
  auto both = compose(first, second);
  REQUIRE(both.n_in() == 2);
  REQUIRE(both.n_out() == 2);
  CHECK(both.rows[0][0] ==
        doctest::Approx(0.2 * 1.0 + 0.3 * 0.5 + 0.5 * 0.25).epsilon(1e-14));
  CHECK(both.rows[1][1] ==
        doctest::Approx(0.6 * 0.0 + 0.1 * 0.5 + 0.3 * 0.75).epsilon(1e-14));
}

TEST_CASE("push_joint_markov_consistency") {
  auto joint = JointDistribution::make({"0", "1"}, {"0", "1"},
                                       {{0.4, 0.1}, {0.2, 0.3}});
  auto filter =
      Channel::make({"0", "1"}, {"z0", "z1"}, {{0.9, 0.1}, {0.3, 0.7}});
  auto [pxz, pyz] = push_joint(joint, filter);
  // Data processing: I(X;Z) <= I(Y;Z) <= I(X;Y) + H(Y|X) slack free checks.
  CHECK(mutual_information(pxz) <= mutual_information(pyz) + 1e-12);
  auto mz_from_x = marginals(pxz).py;
  auto mz_from_y = marginals(pyz).py;
  for (std::size_t i = 0; i < mz_from_x.size(); ++i) {
    CHECK(mz_from_x.p[i] == doctest::Approx(mz_from_y.p[i]).epsilon(1e-12));
  }
}

TEST_CASE("identity_filter_preserves_information") {
  auto joint = JointDistribution::make({"0", "1"}, {"0", "1", "2"},
                                       {{0.3, 0.1, 0.1}, {0.05, 0.25, 0.2}});
  auto id = Channel::identity(joint.y_labels);
  auto [pxz, pyz] = push_joint(joint, id);
  CHECK(mutual_information(pxz) ==
        doctest::Approx(mutual_information(joint)).epsilon(1e-12));
  auto m = marginals(joint);
  CHECK(mutual_information(pyz) ==
        doctest::Approx(entropy(m.py)).epsilon(1e-12));
}

TEST_CASE("joint_from_channel_round_trip") {
  auto input = ProbVector::make({"0", "1"}, {0.3, 0.7});
  auto ch = Channel::make({"0", "1"}, {"0", "1"}, {{0.8, 0.2}, {0.2, 0.8}});
  auto joint = joint_from_channel(input, ch);
  auto m = marginals(joint);
  CHECK(m.px.p[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(m.y_given_x.rows[0][0] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(m.y_given_x.rows[1][1] == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("json_round_trip") {
  auto joint = JointDistribution::make({"x0", "x1"}, {"y0", "y1", "y2"},
                                       {{0.2, 0.1, 0.2}, {0.1, 0.15, 0.25}});
  auto back = joint_from_json(to_json(joint));
  CHECK(back.x_labels == joint.x_labels);
  CHECK(back.y_labels == joint.y_labels);
  for (std::size_t i = 0; i < joint.nx(); ++i)
    for (std::size_t j = 0; j < joint.ny(); ++j)
      CHECK(back.pxy[i][j] == doctest::Approx(joint.pxy[i][j]).epsilon(1e-15));

  auto ch = Channel::make({"a"}, {"u", "v"}, {{0.4, 0.6}});
  auto ch_back = channel_from_json(to_json(ch));
  CHECK(ch_back.out_labels == ch.out_labels);
  CHECK(ch_back.rows[0][1] == doctest::Approx(0.6).epsilon(1e-15));

  CHECK_THROWS_AS(joint_from_json("{\"bad\": true}"), Error);
  CHECK_THROWS_AS(joint_from_json("not json"), Error);
}
