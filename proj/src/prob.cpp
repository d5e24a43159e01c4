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

#include "privex/prob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace privex {

double log2_safe(double p) { return std::log2(p); }

double xlog2x(double p) {
  if (p < kZeroTol) return 0.0;
  return p * std::log2(p);
}

namespace {

void check_finite_nonneg(const std::vector<std::vector<double>>& m) {
  for (const auto& row : m) {
    for (double v : row) {
      if (!std::isfinite(v)) fail(ErrorCode::InputError, "non-finite entry");
      if (v < 0.0) fail(ErrorCode::NegativeEntry, "negative entry");
    }
  }
}

}  // namespace

ProbVector ProbVector::make(std::vector<std::string> labels,
                            std::vector<double> p) {
  if (labels.size() != p.size())
    fail(ErrorCode::ShapeMismatch, "labels vs probabilities length mismatch");
  if (p.empty()) fail(ErrorCode::ShapeMismatch, "empty distribution");
  double total = 0.0;
  for (double v : p) {
    if (!std::isfinite(v)) fail(ErrorCode::InputError, "non-finite probability");
    if (v < 0.0) fail(ErrorCode::NegativeEntry, "negative probability");
    total += v;
  }
  if (total < kZeroTol) fail(ErrorCode::ZeroTotalMass, "zero total mass");
  if (std::abs(total - 1.0) > kMassTol)
    fail(ErrorCode::InputError, "probability mass deviates from 1 by more than 1e-9");
  for (double& v : p) v /= total;
  return ProbVector{std::move(labels), std::move(p)};
}

Channel Channel::make(std::vector<std::string> in_labels,
                      std::vector<std::string> out_labels,
                      std::vector<std::vector<double>> rows) {
  if (rows.size() != in_labels.size())
    fail(ErrorCode::ShapeMismatch, "row count vs in_labels mismatch");
  for (auto& row : rows) {
    if (row.size() != out_labels.size())
      fail(ErrorCode::ShapeMismatch, "row length vs out_labels mismatch");
    double total = 0.0;
    for (double v : row) {
      if (!std::isfinite(v)) fail(ErrorCode::InputError, "non-finite entry");
      if (v < 0.0) fail(ErrorCode::NegativeEntry, "negative channel entry");
      total += v;
    }
    if (total < kZeroTol) fail(ErrorCode::ZeroTotalMass, "zero-mass channel row");
    if (std::abs(total - 1.0) > kMassTol)
      fail(ErrorCode::InputError, "channel row mass deviates from 1");
    for (double& v : row) v /= total;
  }
  return Channel{std::move(in_labels), std::move(out_labels), std::move(rows)};
}

Channel Channel::identity(const std::vector<std::string>& labels) {
  std::vector<std::vector<double>> rows(labels.size(),
                                        std::vector<double>(labels.size(), 0.0));
  for (std::size_t i = 0; i < labels.size(); ++i) rows[i][i] = 1.0;
  return Channel{labels, labels, std::move(rows)};
}

JointDistribution JointDistribution::make(
    std::vector<std::string> x_labels, std::vector<std::string> y_labels,
    std::vector<std::vector<double>> pxy) {
  if (pxy.size() != x_labels.size())
    fail(ErrorCode::ShapeMismatch, "pxy rows vs x_labels mismatch");
  for (const auto& row : pxy)
    if (row.size() != y_labels.size())
      fail(ErrorCode::ShapeMismatch, "pxy cols vs y_labels mismatch");
  check_finite_nonneg(pxy);

  double total = 0.0;
  for (const auto& row : pxy)
    total = std::accumulate(row.begin(), row.end(), total);
  if (total < kZeroTol) fail(ErrorCode::ZeroTotalMass, "zero total mass");
  if (std::abs(total - 1.0) > kMassTol)
    fail(ErrorCode::InputError, "joint mass deviates from 1 by more than 1e-9");
  for (auto& row : pxy)
    for (double& v : row) v /= total;

  // Strip degenerate symbols.
  std::vector<std::size_t> keep_x, keep_y;
  std::vector<std::string> stripped_x, stripped_y;
  for (std::size_t i = 0; i < pxy.size(); ++i) {
    double s = std::accumulate(pxy[i].begin(), pxy[i].end(), 0.0);
    if (s > kZeroTol) keep_x.push_back(i);
    else stripped_x.push_back(x_labels[i]);
  }
  for (std::size_t j = 0; j < y_labels.size(); ++j) {
    double s = 0.0;
    for (const auto& row : pxy) s += row[j];
    if (s > kZeroTol) keep_y.push_back(j);
    else stripped_y.push_back(y_labels[j]);
  }
  JointDistribution out;
  for (std::size_t i : keep_x) out.x_labels.push_back(x_labels[i]);
  for (std::size_t j : keep_y) out.y_labels.push_back(y_labels[j]);
  for (std::size_t i : keep_x) {
    std::vector<double> row;
    row.reserve(keep_y.size());
    for (std::size_t j : keep_y) row.push_back(pxy[i][j]);
    out.pxy.push_back(std::move(row));
  }
  out.stripped_x = std::move(stripped_x);
  out.stripped_y = std::move(stripped_y);
  if (out.pxy.empty() || out.y_labels.empty())
    fail(ErrorCode::ZeroTotalMass, "all symbols degenerate");
  return out;
}

JointDistribution validate_joint(const std::vector<std::vector<double>>& raw,
                                 std::vector<std::string> x_labels,
                                 std::vector<std::string> y_labels) {
  if (raw.empty()) fail(ErrorCode::ShapeMismatch, "empty matrix");
  std::size_t cols = raw.front().size();
  for (const auto& row : raw)
    if (row.size() != cols) fail(ErrorCode::ShapeMismatch, "ragged matrix");
  return JointDistribution::make(std::move(x_labels), std::move(y_labels), raw);
}

Marginals marginals(const JointDistribution& joint) {
  std::size_t nx = joint.nx(), ny = joint.ny();
  std::vector<double> px(nx, 0.0), py(ny, 0.0);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      px[i] += joint.pxy[i][j];
      py[j] += joint.pxy[i][j];
    }
  std::vector<std::vector<double>> ygx(nx, std::vector<double>(ny, 0.0));
  std::vector<std::vector<double>> xgy(ny, std::vector<double>(nx, 0.0));
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      ygx[i][j] = joint.pxy[i][j] / px[i];
      xgy[j][i] = joint.pxy[i][j] / py[j];
    }
  return Marginals{
      ProbVector{joint.x_labels, std::move(px)},
      ProbVector{joint.y_labels, std::move(py)},
      Channel{joint.x_labels, joint.y_labels, std::move(ygx)},
      Channel{joint.y_labels, joint.x_labels, std::move(xgy)}};
}

double entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) h -= xlog2x(v);
  return std::max(h, 0.0);
}

double entropy(const ProbVector& p) { return entropy(p.p); }

double joint_entropy(const JointDistribution& joint) {
  double h = 0.0;
  for (const auto& row : joint.pxy)
    for (double v : row) h -= xlog2x(v);
  return std::max(h, 0.0);
}

double conditional_entropy(const JointDistribution& joint) {
  Marginals m = marginals(joint);
  return std::max(joint_entropy(joint) - entropy(m.px), 0.0);
}

double mutual_information(const JointDistribution& joint) {
  Marginals m = marginals(joint);
  double i = entropy(m.px) + entropy(m.py) - joint_entropy(joint);
  return std::max(i, 0.0);
}

double kl_divergence(const std::vector<double>& p,
                     const std::vector<double>& q) {
  if (p.size() != q.size())
    fail(ErrorCode::AlphabetMismatch, "kl_divergence: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < kZeroTol) continue;
    if (q[i] < kZeroTol) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return std::max(d, 0.0);
}

double kl_divergence(const ProbVector& p, const ProbVector& q) {
  if (p.labels != q.labels)
    fail(ErrorCode::AlphabetMismatch, "kl_divergence: alphabets differ");
  return kl_divergence(p.p, q.p);
}

double binary_entropy(double a) {
  if (a < -1e-12 || a > 1.0 + 1e-12)
    fail(ErrorCode::OutOfRange, "binary_entropy: argument outside [0,1]");
  a = std::clamp(a, 0.0, 1.0);
  return -xlog2x(a) - xlog2x(1.0 - a);
}

double binary_entropy_inv(double h) {
  if (h < -1e-12 || h > 1.0 + 1e-12)
    fail(ErrorCode::OutOfRange, "binary_entropy_inv: argument outside [0,1]");
  h = std::clamp(h, 0.0, 1.0);
  double lo = 0.0, hi = 0.5;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < h) lo = mid;
    else hi = mid;
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

Channel compose(const Channel& first, const Channel& second) {
  if (first.out_labels != second.in_labels)
    fail(ErrorCode::AlphabetMismatch, "compose: inner alphabets differ");
  std::size_t n = first.n_in(), k = first.n_out(), m = second.n_out();
  std::vector<std::vector<double>> rows(n, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double w = first.rows[i][j];
      if (w == 0.0) continue;
      for (std::size_t z = 0; z < m; ++z) rows[i][z] += w * second.rows[j][z];
    }
  return Channel{first.in_labels, second.out_labels, std::move(rows)};
}

std::pair<JointDistribution, JointDistribution> push_joint(
    const JointDistribution& joint, const Channel& filter) {
  if (filter.in_labels != joint.y_labels)
    fail(ErrorCode::AlphabetMismatch, "push_joint: filter input is not Y");
  std::size_t nx = joint.nx(), ny = joint.ny(), nz = filter.n_out();
  std::vector<std::vector<double>> pxz(nx, std::vector<double>(nz, 0.0));
  std::vector<std::vector<double>> pyz(ny, std::vector<double>(nz, 0.0));
  std::vector<double> py(ny, 0.0);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) py[j] += joint.pxy[i][j];
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t z = 0; z < nz; ++z) {
      double f = filter.rows[j][z];
      if (f == 0.0) continue;
      pyz[j][z] = py[j] * f;
      for (std::size_t i = 0; i < nx; ++i) pxz[i][z] += joint.pxy[i][j] * f;
    }
  return {JointDistribution::make(joint.x_labels, filter.out_labels, pxz),
          JointDistribution::make(joint.y_labels, filter.out_labels, pyz)};
}

JointDistribution joint_from_channel(const ProbVector& input,
                                     const Channel& channel) {
  if (input.labels != channel.in_labels)
    fail(ErrorCode::AlphabetMismatch, "joint_from_channel: alphabets differ");
  std::vector<std::vector<double>> pxy(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    pxy[i].resize(channel.n_out());
    for (std::size_t j = 0; j < channel.n_out(); ++j)
      pxy[i][j] = input.p[i] * channel.rows[i][j];
  }
  return JointDistribution::make(input.labels, channel.out_labels, pxy);
}

std::string to_json(const JointDistribution& joint) {
  nlohmann::json j;
  j["x_labels"] = joint.x_labels;
  j["y_labels"] = joint.y_labels;
  j["pxy"] = joint.pxy;
  return j.dump(2);
}

std::string to_json(const Channel& channel) {
  nlohmann::json j;
  j["in_labels"] = channel.in_labels;
  j["out_labels"] = channel.out_labels;
  j["rows"] = channel.rows;
  return j.dump(2);
}

JointDistribution joint_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::InputError, std::string("JSON parse error: ") + e.what());
  }
  try {
    return validate_joint(j.at("pxy").get<std::vector<std::vector<double>>>(),
                          j.at("x_labels").get<std::vector<std::string>>(),
                          j.at("y_labels").get<std::vector<std::string>>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InputError, std::string("joint schema error: ") + e.what());
  }
}

Channel channel_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::InputError, std::string("JSON parse error: ") + e.what());
  }
  try {
    return Channel::make(j.at("in_labels").get<std::vector<std::string>>(),
                         j.at("out_labels").get<std::vector<std::string>>(),
                         j.at("rows").get<std::vector<std::vector<double>>>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::InputError, std::string("channel schema error: ") + e.what());
  }
}

}  // namespace privex
