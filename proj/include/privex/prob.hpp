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

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "privex/errors.hpp"

namespace privex {

// All information quantities are in bits (base-2 logarithms).
// Probabilities below kZeroTol are treated as exact zeros in entropy sums.
inline constexpr double kZeroTol = 1e-15;
inline constexpr double kMassTol = 1e-9;

double log2_safe(double p);          // log2(p), -inf guarded by caller
double xlog2x(double p);             // p*log2(p) with 0*log0 = 0

/// A finite probability distribution over a labeled alphabet.
/// Entries are nonnegative and renormalized on construction; inputs whose
/// total mass deviates from 1 by more than kMassTol are rejected.
struct ProbVector {
  std::vector<std::string> labels;
  std::vector<double> p;

  static ProbVector make(std::vector<std::string> labels,
                         std::vector<double> p);
  std::size_t size() const { return p.size(); }
};

/// Row-stochastic matrix; rows indexed by input symbol.
struct Channel {
  std::vector<std::string> in_labels;
  std::vector<std::string> out_labels;
  std::vector<std::vector<double>> rows;

  static Channel make(std::vector<std::string> in_labels,
                      std::vector<std::string> out_labels,
                      std::vector<std::vector<double>> rows);
  static Channel identity(const std::vector<std::string>& labels);
  std::size_t n_in() const { return rows.size(); }
  std::size_t n_out() const { return out_labels.size(); }
};

/// Joint distribution over finite X and Y alphabets. Degenerate (zero-mass)
/// rows/columns are stripped on construction and recorded.
struct JointDistribution {
  std::vector<std::string> x_labels;
  std::vector<std::string> y_labels;
  std::vector<std::vector<double>> pxy;  // |X| x |Y|
  std::vector<std::string> stripped_x;
  std::vector<std::string> stripped_y;

  static JointDistribution make(std::vector<std::string> x_labels,
                                std::vector<std::string> y_labels,
                                std::vector<std::vector<double>> pxy);
  std::size_t nx() const { return pxy.size(); }
  std::size_t ny() const { return y_labels.size(); }
};

JointDistribution validate_joint(const std::vector<std::vector<double>>& raw,
                                 std::vector<std::string> x_labels,
                                 std::vector<std::string> y_labels);

struct Marginals {
  ProbVector px;
  ProbVector py;
  Channel y_given_x;
  Channel x_given_y;
};

Marginals marginals(const JointDistribution& joint);

double entropy(const ProbVector& p);
double entropy(const std::vector<double>& p);
double joint_entropy(const JointDistribution& joint);
double conditional_entropy(const JointDistribution& joint);  // H(Y|X)
double mutual_information(const JointDistribution& joint);

/// D(p||q) in bits; +infinity when q(u)=0 < p(u) (absolute-continuity
/// failure). AlphabetMismatch if the supports are labeled differently.
double kl_divergence(const ProbVector& p, const ProbVector& q);
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q);

double binary_entropy(double a);
double binary_entropy_inv(double h);  // increasing branch, range [0, 0.5]

/// Cascade second after first: P(z|x) = sum_y first(y|x) second(z|y).
Channel compose(const Channel& first, const Channel& second);

/// Materialize the Markov chain X - Y - Z for a filter P_{Z|Y}:
/// returns (P_{XZ}, P_{YZ}).
std::pair<JointDistribution, JointDistribution> push_joint(
    const JointDistribution& joint, const Channel& filter);

/// Joint induced by an input distribution through a channel.
JointDistribution joint_from_channel(const ProbVector& input,
                                     const Channel& channel);

// JSON schemas:
//   joint:   {"x_labels":[...], "y_labels":[...], "pxy":[[...],...]}
//   channel: {"in_labels":[...], "out_labels":[...], "rows":[[...],...]}
std::string to_json(const JointDistribution& joint);
std::string to_json(const Channel& channel);
JointDistribution joint_from_json(const std::string& text);
Channel channel_from_json(const std::string& text);

}  // namespace privex
