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
#include <random>
#include <string>
#include <vector>

#include "privex/prob.hpp"

namespace privex::verify {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

/// Random test-case generators shared by the property suite and unit tests.
JointDistribution random_joint(std::size_t nx, std::size_t ny,
                               std::mt19937_64& rng);
Channel random_channel(std::size_t n_in, std::size_t n_out,
                       std::mt19937_64& rng);

/// Brute-force maximal correlation: alternating conditional expectations of
/// standardized scores from random starts. Independent oracle for the
/// spectral computation.
double variational_max_correlation(const JointDistribution& joint,
                                   int restarts, int iters,
                                   std::uint64_t seed);

/// Brute-force minimum of mmse(f(X)|Y)/var(f(X)) over scores f, evaluated
/// with the exact enumeration. Independent oracle for the Poincare constant.
double min_mmse_ratio(const JointDistribution& joint, int restarts,
                      std::uint64_t seed);

/// For distributions on {-k..-1, 1..k} with q(x) = p(-x) and
/// r_l = l*p + (1-l)*q: margin of the strict inequality
/// D(p||r_{1-l})/D(p||r_l) < log(1-l)/log(l), positive when it holds.
double mirrored_divergence_margin(const std::vector<double>& p, double lambda);

/// Full property suite; deterministic given the seed.
std::vector<CheckResult> run_all(std::uint64_t seed);

}  // namespace privex::verify
