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

#include "privex/dependence.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace privex {

namespace {

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& m) {
  Eigen::MatrixXd out(m.size(), m.empty() ? 0 : m.front().size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = m[i][j];
  return out;
}

// B[x,y] = pxy / sqrt(px * py) for an already-normalized matrix.
Eigen::MatrixXd normalized_b_matrix(const Eigen::MatrixXd& pxy) {
  Eigen::VectorXd px = pxy.rowwise().sum();
  Eigen::VectorXd py = pxy.colwise().sum();
  Eigen::MatrixXd b = pxy;
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      double d = std::sqrt(px(i) * py(j));
      b(i, j) = d > 0.0 ? b(i, j) / d : 0.0;
    }
  return b;
}

}  // namespace

SpectralDecomposition spectral_decomposition(const JointDistribution& joint) {
  Eigen::MatrixXd b = normalized_b_matrix(to_eigen(joint.pxy));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SpectralDecomposition out;
  const auto& s = svd.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    std::vector<double> u(svd.matrixU().rows()), v(svd.matrixV().rows());
    for (Eigen::Index i = 0; i < svd.matrixU().rows(); ++i)
      u[i] = svd.matrixU()(i, k);
    for (Eigen::Index j = 0; j < svd.matrixV().rows(); ++j)
      v[j] = svd.matrixV()(j, k);
    out.left.push_back(std::move(u));
    out.right.push_back(std::move(v));
  }
  return out;
}

double maximal_correlation(const JointDistribution& joint) {
  if (joint.nx() < 2 || joint.ny() < 2) return 0.0;
  SpectralDecomposition sd = spectral_decomposition(joint);
  if (sd.singular_values.size() < 2) return 0.0;
  return std::clamp(sd.singular_values[1], 0.0, 1.0);
}

WeakIndependenceResult weak_independence(const JointDistribution& joint,
                                         double rank_threshold) {
  Marginals m = marginals(joint);
  Eigen::MatrixXd rows(joint.ny(), joint.nx());
  for (std::size_t y = 0; y < joint.ny(); ++y)
    for (std::size_t x = 0; x < joint.nx(); ++x)
      rows(y, x) = m.x_given_y.rows[y][x];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
  int rank = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > rank_threshold) ++rank;
  return WeakIndependenceResult{rank < static_cast<int>(joint.ny()), rank};
}

double poincare_constant(const JointDistribution& joint) {
  double r = maximal_correlation(joint);
  return std::clamp(1.0 - r * r, 0.0, 1.0);
}

double mmse_discrete(const std::vector<double>& f,
                     const JointDistribution& joint_xz) {
  if (f.size() != joint_xz.nx())
    fail(ErrorCode::ShapeMismatch, "mmse_discrete: f length vs X alphabet");
  std::size_t nx = joint_xz.nx(), nz = joint_xz.ny();
  std::vector<double> pz(nz, 0.0);
  double mean = 0.0, second = 0.0;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t z = 0; z < nz; ++z) {
      double p = joint_xz.pxy[i][z];
      pz[z] += p;
      mean += p * f[i];
      second += p * f[i] * f[i];
    }
  double var = second - mean * mean;
  if (var < 1e-14)
    fail(ErrorCode::ConstantFunction, "mmse_discrete: var(f(X)) = 0");
  double mmse = 0.0;
  for (std::size_t z = 0; z < nz; ++z) {
    if (pz[z] < kZeroTol) continue;
    double cm = 0.0, cs = 0.0;
    for (std::size_t i = 0; i < nx; ++i) {
      double w = joint_xz.pxy[i][z] / pz[z];
      cm += w * f[i];
      cs += w * f[i] * f[i];
    }
    mmse += pz[z] * std::max(cs - cm * cm, 0.0);
  }
  return std::clamp(mmse, 0.0, var);
}

bool mmse_privacy_band(const JointDistribution& joint_xz, double eps) {
  if (eps < 0.0 || eps > 1.0)
    fail(ErrorCode::OutOfRange, "mmse_privacy_band: eps outside [0,1]");
  double r = maximal_correlation(joint_xz);
  return r * r <= eps + 1e-12;
}

namespace detail {

double rho_m_of_matrix(const std::vector<std::vector<double>>& pxy) {
  Eigen::MatrixXd m = to_eigen(pxy);
  double total = m.sum();
  if (total <= 0.0) return 0.0;
  m /= total;
  Eigen::MatrixXd b = normalized_b_matrix(m);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
  if (svd.singularValues().size() < 2) return 0.0;
  return std::clamp(svd.singularValues()(1), 0.0, 1.0);
}

}  // namespace detail

}  // namespace privex
