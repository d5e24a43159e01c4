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

#include "privex/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace privex {

namespace {

double normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

struct GaussHermite {
  std::vector<double> nodes;    // roots t_i of H_n
  std::vector<double> weights;  // normalized so weights sum to 1
};

// Golub-Welsch on the Hermite Jacobi matrix; weights already divided by
// sqrt(pi), so E[f(N(mu, s^2))] = sum_i w_i f(mu + sqrt(2) s t_i).
GaussHermite gauss_hermite(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    double b = std::sqrt(i / 2.0);
    j(i, i - 1) = b;
    j(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  GaussHermite out;
  out.nodes.resize(n);
  out.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    out.nodes[i] = es.eigenvalues()(i);
    double v = es.eigenvectors()(0, i);
    out.weights[i] = v * v;
  }
  return out;
}

// Truncation radius around the mean with certified tail below tail_mass.
double certified_radius(double sigma, double tail_mass) {
  double r = 6.5 * sigma;
  for (int i = 0; i < 200; ++i) {
    double tail = 2.0 * normal_cdf(-r / sigma);
    if (tail < tail_mass) return r;
    r *= 1.5;
  }
  fail(ErrorCode::TruncationInsufficient,
       "quantizer truncation: tail mass cannot be certified");
}

// Entropy in bits of Q_M applied to N(mu, sigma^2).
double quantized_entropy(double mu, double sigma, int M, double tail_mass) {
  if (sigma <= 0.0) return 0.0;
  double scale = std::ldexp(1.0, M);  // 2^M
  double r = certified_radius(sigma, tail_mass);
  long long k_lo = static_cast<long long>(std::floor((mu - r) * scale));
  long long k_hi = static_cast<long long>(std::floor((mu + r) * scale));
  double h = 0.0;
  double prev = normal_cdf((k_lo / scale - mu) / sigma);
  for (long long k = k_lo; k <= k_hi; ++k) {
    double next = normal_cdf(((k + 1) / scale - mu) / sigma);
    double p = next - prev;
    prev = next;
    if (p > 1e-300) h -= p * std::log2(p);
  }
  return h;
}

struct CondParams {
  double mu;
  double sigma;
};

CondParams cond_params(const GaussianPair& pair, double gamma,
                       Conditioning cond, double v) {
  switch (cond) {
    case Conditioning::None:
      return {0.0, std::sqrt(pair.var_y + gamma * gamma)};
    case Conditioning::GivenY:
      return {v, gamma};
    case Conditioning::GivenX:
    default:
      return {std::sqrt(pair.rho2 * pair.var_y) * v,
              std::sqrt((1.0 - pair.rho2) * pair.var_y + gamma * gamma)};
  }
}

QuantizedMutualInfo mi_quantized_with_nodes(const GaussianPair& pair,
                                            double gamma, int M,
                                            double tail_mass, int nodes) {
  GaussHermite gh = gauss_hermite(nodes);
  double hz = quantized_entropy(0.0, std::sqrt(pair.var_y + gamma * gamma), M,
                                tail_mass);
  double sd_y = std::sqrt(pair.var_y);
  double h_given_y = 0.0, h_given_x = 0.0;
  for (int i = 0; i < nodes; ++i) {
    double y = std::sqrt(2.0) * sd_y * gh.nodes[i];
    h_given_y += gh.weights[i] * quantized_entropy(y, gamma, M, tail_mass);
    CondParams cx = cond_params(pair, gamma, Conditioning::GivenX,
                                std::sqrt(2.0) * gh.nodes[i]);
    h_given_x += gh.weights[i] * quantized_entropy(cx.mu, cx.sigma, M,
                                                   tail_mass);
  }
  return QuantizedMutualInfo{std::max(hz - h_given_x, 0.0),
                             std::max(hz - h_given_y, 0.0)};
}

}  // namespace

GaussianPair GaussianPair::make(double rho2, double var_y) {
  if (!(rho2 > 0.0) || !(rho2 < 1.0))
    fail(ErrorCode::OutOfRange, "GaussianPair: rho2 outside (0,1)");
  if (!(var_y > 0.0))
    fail(ErrorCode::OutOfRange, "GaussianPair: var_y must be positive");
  return GaussianPair{rho2, var_y};
}

double mutual_info_gaussian(const GaussianPair& pair) {
  return -0.5 * std::log2(1.0 - pair.rho2);
}

double g_gaussian(const GaussianPair& pair, double eps) {
  if (eps < 0.0) fail(ErrorCode::OutOfRange, "g_gaussian: eps < 0");
  double denom = std::exp2(-2.0 * eps) + pair.rho2 - 1.0;
  if (denom <= 0.0)
    fail(ErrorCode::EpsilonAtOrAboveMI,
         "g_gaussian: eps at or above I(X;Y), value diverges");
  return 0.5 * std::log2(pair.rho2 / denom);
}

double g_hat_gaussian(const GaussianPair& pair, double eps) {
  if (eps < 0.0) fail(ErrorCode::OutOfRange, "g_hat_gaussian: eps < 0");
  if (eps >= pair.rho2)
    fail(ErrorCode::EpsilonAtOrAboveRho2,
         "g_hat_gaussian: eps at or above rho2, value diverges");
  return 0.5 * std::log2(pair.rho2 / (pair.rho2 - eps));
}

double gamma_star(const GaussianPair& pair, double eps) {
  if (eps <= 0.0 || eps >= mutual_info_gaussian(pair))
    fail(ErrorCode::EpsilonOutOfRange, "gamma_star: eps outside (0, I(X;Y))");
  double e2 = std::exp2(-2.0 * eps);
  double g2 = (e2 + pair.rho2 - 1.0) / (1.0 - e2) * pair.var_y;
  return std::sqrt(std::max(g2, 0.0));
}

double mmse_lower_bound(const GaussianPair& pair, double eps) {
  return pair.var_y * std::exp2(-2.0 * g_gaussian(pair, eps));
}

std::map<long long, double> quantized_cell_probs(const GaussianPair& pair,
                                                 double gamma, int M,
                                                 Conditioning cond,
                                                 double cond_value,
                                                 const QuantizerConfig& config) {
  if (gamma < 0.0) fail(ErrorCode::OutOfRange, "quantized_cell_probs: gamma < 0");
  if (M < 1) fail(ErrorCode::OutOfRange, "quantized_cell_probs: M < 1");
  double scale = std::ldexp(1.0, M);
  CondParams cp = cond_params(pair, gamma, cond, cond_value);
  std::map<long long, double> out;
  if (cp.sigma <= 0.0) {
    out[static_cast<long long>(std::floor(cp.mu * scale))] = 1.0;
    return out;
  }
  double r = certified_radius(cp.sigma, config.tail_mass);
  long long k_lo = static_cast<long long>(std::floor((cp.mu - r) * scale));
  long long k_hi = static_cast<long long>(std::floor((cp.mu + r) * scale));
  double prev = normal_cdf((k_lo / scale - cp.mu) / cp.sigma);
  for (long long k = k_lo; k <= k_hi; ++k) {
    double next = normal_cdf(((k + 1) / scale - cp.mu) / cp.sigma);
    double p = next - prev;
    prev = next;
    if (p > 0.0) out[k] = p;
  }
  return out;
}

QuantizedMutualInfo mutual_info_quantized(const GaussianPair& pair,
                                          double gamma, int M,
                                          const QuantizerConfig& config) {
  if (!(gamma > 0.0))
    fail(ErrorCode::OutOfRange, "mutual_info_quantized: gamma must be > 0");
  if (M < 1) fail(ErrorCode::OutOfRange, "mutual_info_quantized: M < 1");
  QuantizedMutualInfo coarse = mi_quantized_with_nodes(
      pair, gamma, M, config.tail_mass, config.quad_nodes);
  QuantizedMutualInfo fine = mi_quantized_with_nodes(
      pair, gamma, M, config.tail_mass, 2 * config.quad_nodes);
  if (std::abs(fine.i_xz - coarse.i_xz) > 1e-6 ||
      std::abs(fine.i_yz - coarse.i_yz) > 1e-6)
    fail(ErrorCode::QuadratureNotConverged,
         "mutual_info_quantized: node doubling moved the result by > 1e-6");
  return fine;
}

QuantizedPoint g_eps_M(const GaussianPair& pair, double eps, int M,
                       const QuantizerConfig& config) {
  double info = mutual_info_gaussian(pair);
  if (!(eps > 0.0) || eps >= info)
    fail(ErrorCode::EpsilonOutOfRange, "g_eps_M: eps outside (0, I(X;Y))");
  double sd_y = std::sqrt(pair.var_y);
  auto log_grid = [](double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
      g[i] = lo * std::pow(hi / lo, n > 1 ? i / double(n - 1) : 0.0);
    return g;
  };
  std::vector<double> grid =
      log_grid(config.gamma_min_factor * sd_y, config.gamma_max_factor * sd_y,
               config.gamma_grid_points);

  bool found = false;
  double best_v = 0.0, best_g = 0.0;
  int best_i = -1;
  auto consider = [&](double gamma) -> void {
    // A noisier channel cannot beat the incumbent: its unquantized ceiling
    // 1/2 log2(1 + var_y/gamma^2) already falls short.
    double ceiling = 0.5 * std::log2(1.0 + pair.var_y / (gamma * gamma));
    if (found && ceiling <= best_v) return;
    QuantizedMutualInfo mi;
    try {
      mi = mutual_info_quantized(pair, gamma, M, config);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::QuadratureNotConverged) return;
      throw;
    }
    if (mi.i_xz > eps) return;
    if (!found || mi.i_yz > best_v) {
      found = true;
      best_v = mi.i_yz;
      best_g = gamma;
    }
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    consider(grid[i]);
    if (found && best_g == grid[i]) best_i = static_cast<int>(i);
  }
  if (!found)
    fail(ErrorCode::NoFeasibleGamma, "g_eps_M: no grid point meets the budget");
  // The value is decreasing in gamma on the feasible side, so the optimum
  // sits at the leakage frontier i_xz = eps; bisect down to it from the best
  // grid point.
  if (best_i > 0) {
    double lo = grid[best_i - 1];
    double hi = best_g;
    for (int it = 0; it < config.refine_points && hi - lo > 1e-12 * hi; ++it) {
      double mid = std::sqrt(lo * hi);
      bool feasible = false;
      QuantizedMutualInfo mi{};
      try {
        mi = mutual_info_quantized(pair, mid, M, config);
        feasible = mi.i_xz <= eps;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::QuadratureNotConverged) throw;
      }
      if (feasible) {
        hi = mid;
        if (mi.i_yz > best_v) {
          best_v = mi.i_yz;
          best_g = mid;
        }
      } else {
        lo = mid;
      }
    }
  }
  return QuantizedPoint{best_v, best_g};
}

std::vector<ConvergenceRow> convergence_report(const GaussianPair& pair,
                                               double eps,
                                               const std::vector<int>& m_list,
                                               const QuantizerConfig& config) {
  if (!std::is_sorted(m_list.begin(), m_list.end()))
    fail(ErrorCode::InputError, "convergence_report: M list is not ascending");
  double target = g_gaussian(pair, eps);
  std::vector<ConvergenceRow> rows;
  for (int m : m_list) {
    QuantizedPoint pt = g_eps_M(pair, eps, m, config);
    rows.push_back(
        ConvergenceRow{m, pt.value, pt.gamma, std::abs(pt.value - target), 0.0});
  }
  if (!rows.empty()) {
    double gamma = rows.back().gamma;
    double sigma = std::sqrt(pair.var_y + gamma * gamma);
    for (auto& row : rows)
      row.h_qm_minus_m =
          quantized_entropy(0.0, sigma, row.M, config.tail_mass) - row.M;
  }
  return rows;
}

}  // namespace privex
