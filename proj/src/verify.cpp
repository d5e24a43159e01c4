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

#include "privex/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "privex/dependence.hpp"
#include "privex/filters.hpp"
#include "privex/gaussian.hpp"
#include "privex/rate_privacy.hpp"

namespace privex::verify {

namespace {

std::vector<std::string> index_labels(const std::string& prefix,
                                      std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::vector<double> random_simplex(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> v(n);
  double s = 0.0;
  for (double& x : v) s += x = expo(rng);
  for (double& x : v) x /= s;
  return v;
}

struct Scores {
  std::vector<double> f;  // over X
};

void standardize(std::vector<double>& f, const std::vector<double>& weights) {
  double mean = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) mean += weights[i] * f[i];
  double var = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] -= mean;
    var += weights[i] * f[i] * f[i];
  }
  double sd = std::sqrt(var);
  if (sd < 1e-15) return;
  for (double& v : f) v /= sd;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

JointDistribution random_joint(std::size_t nx, std::size_t ny,
                               std::mt19937_64& rng) {
  std::vector<std::vector<double>> pxy(nx);
  std::vector<double> flat = random_simplex(nx * ny, rng);
  for (std::size_t i = 0; i < nx; ++i)
    pxy[i].assign(flat.begin() + i * ny, flat.begin() + (i + 1) * ny);
  return JointDistribution::make(index_labels("x", nx), index_labels("y", ny),
                                 std::move(pxy));
}

Channel random_channel(std::size_t n_in, std::size_t n_out,
                       std::mt19937_64& rng) {
  std::vector<std::vector<double>> rows(n_in);
  for (auto& r : rows) r = random_simplex(n_out, rng);
  return Channel::make(index_labels("a", n_in), index_labels("b", n_out),
                       std::move(rows));
}

double variational_max_correlation(const JointDistribution& joint,
                                   int restarts, int iters,
                                   std::uint64_t seed) {
  Marginals m = marginals(joint);
  std::size_t nx = joint.nx(), ny = joint.ny();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> f(nx), g(ny);
    for (double& v : f) v = gauss(rng);
    standardize(f, m.px.p);
    for (int it = 0; it < iters; ++it) {
      for (std::size_t y = 0; y < ny; ++y) {
        g[y] = 0.0;
        for (std::size_t x = 0; x < nx; ++x)
          g[y] += m.x_given_y.rows[y][x] * f[x];
      }
      standardize(g, m.py.p);
      for (std::size_t x = 0; x < nx; ++x) {
        f[x] = 0.0;
        for (std::size_t y = 0; y < ny; ++y)
          f[x] += m.y_given_x.rows[x][y] * g[y];
      }
      standardize(f, m.px.p);
    }
    double corr = 0.0;
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y)
        corr += joint.pxy[x][y] * f[x] * g[y];
    best = std::max(best, std::abs(corr));
  }
  return std::min(best, 1.0);
}

double min_mmse_ratio(const JointDistribution& joint, int restarts,
                      std::uint64_t seed) {
  Marginals m = marginals(joint);
  std::size_t nx = joint.nx(), ny = joint.ny();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double best = 1.0;
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> f(nx);
    for (double& v : f) v = gauss(rng);
    standardize(f, m.px.p);
    for (int it = 0; it < 60; ++it) {
      if (std::abs(*std::max_element(f.begin(), f.end(),
                                     [](double a, double b) {
                                       return std::abs(a) < std::abs(b);
                                     })) < 1e-12)
        break;
      double ratio = mmse_discrete(f, joint);
      best = std::min(best, ratio);
      // One round of conditional-expectation smoothing sharpens the score.
      std::vector<double> g(ny, 0.0);
      for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t x = 0; x < nx; ++x)
          g[y] += m.x_given_y.rows[y][x] * f[x];
      for (std::size_t x = 0; x < nx; ++x) {
        f[x] = 0.0;
        for (std::size_t y = 0; y < ny; ++y)
          f[x] += m.y_given_x.rows[x][y] * g[y];
      }
      standardize(f, m.px.p);
    }
  }
  return best;
}

double mirrored_divergence_margin(const std::vector<double>& p,
                                  double lambda) {
  std::size_t n = p.size();
  if (n % 2 != 0)
    fail(ErrorCode::ShapeMismatch,
         "mirrored_divergence_margin: alphabet size must be even");
  std::vector<double> q(n);
  // Index i holds symbol -(k-i) for i < k and symbol i-k+1 for i >= k, so
  // mirroring x -> -x reverses the vector.
  for (std::size_t i = 0; i < n; ++i) q[i] = p[n - 1 - i];
  auto mix = [&](double l) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = l * p[i] + (1.0 - l) * q[i];
    return r;
  };
  double d_lo = kl_divergence(p, mix(lambda));
  double d_hi = kl_divergence(p, mix(1.0 - lambda));
  if (d_lo < 1e-14) return -1.0;  // p is symmetric, inequality is vacuous
  double lhs = d_hi / d_lo;
  double rhs = std::log(1.0 - lambda) / std::log(lambda);
  return rhs - lhs;
}

std::vector<CheckResult> run_all(std::uint64_t seed) {
  std::vector<CheckResult> out;
  auto check = [&](const std::string& name, bool pass,
                   const std::string& detail = "") {
    out.push_back(CheckResult{name, pass, detail});
  };
  std::mt19937_64 rng(seed);

  {
    bool ok = true;
    double worst = 0.0;
    for (int t = 0; t < 30; ++t) {
      JointDistribution j = random_joint(2 + t % 3, 2 + (t / 3) % 3, rng);
      Marginals m = marginals(j);
      double lhs = joint_entropy(j);
      double rhs = entropy(m.px) + conditional_entropy(j);
      worst = std::max(worst, std::abs(lhs - rhs));
      ok = ok && std::abs(lhs - rhs) <= 1e-10;
    }
    check("entropy_chain_rule", ok, "worst gap " + fmt(worst));
  }
  {
    bool ok = true;
    for (int t = 0; t < 30; ++t) {
      JointDistribution j = random_joint(3, 3, rng);
      Marginals m = marginals(j);
      double s = 0.0;
      for (std::size_t y = 0; y < j.ny(); ++y)
        s += m.py.p[y] * kl_divergence(m.x_given_y.rows[y], m.px.p);
      ok = ok && std::abs(s - mutual_information(j)) <= 1e-10;
    }
    check("mutual_information_divergence_decomposition", ok);
  }
  {
    bool ok = true;
    for (int t = 0; t < 30; ++t) {
      JointDistribution j = random_joint(3, 3, rng);
      Channel f = random_channel(3, 4, rng);
      f.in_labels = j.y_labels;
      auto [pxz, pyz] = push_joint(j, f);
      ok = ok && mutual_information(pxz) <= mutual_information(j) + 1e-9 &&
           mutual_information(pxz) <= mutual_information(pyz) + 1e-9;
    }
    check("data_processing_on_filtered_chains", ok);
  }
  {
    bool ok = true;
    for (int t = 0; t < 20; ++t) {
      Channel a = random_channel(3, 3, rng);
      Channel b = random_channel(3, 4, rng);
      Channel c = random_channel(4, 2, rng);
      b.in_labels = a.out_labels;
      c.in_labels = b.out_labels;
      Channel lhs = compose(compose(a, b), c);
      Channel rhs = compose(a, compose(b, c));
      for (std::size_t i = 0; i < lhs.n_in(); ++i)
        for (std::size_t z = 0; z < lhs.n_out(); ++z)
          ok = ok && std::abs(lhs.rows[i][z] - rhs.rows[i][z]) <= 1e-12;
    }
    check("channel_composition_associative", ok);
  }
  {
    bool ok = true;
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      JointDistribution j = random_joint(3, 3, rng);
      double spectral = maximal_correlation(j);
      double brute = variational_max_correlation(j, 20, 200, rng());
      worst = std::max(worst, std::abs(spectral - brute));
      ok = ok && std::abs(spectral - brute) <= 1e-6;
    }
    check("max_correlation_spectral_vs_brute_force", ok,
          "worst gap " + fmt(worst));
  }
  {
    bool ok_dpi = true, ok_tight = true;
    for (int t = 0; t < 50; ++t) {
      JointDistribution j = random_joint(3, 3, rng);
      Marginals m = marginals(j);
      Channel f = random_channel(3, 3, rng);
      f.in_labels = j.y_labels;
      auto [pxz, pyz] = push_joint(j, f);
      double lhs = maximal_correlation(pxz);
      double rhs = maximal_correlation(j) * maximal_correlation(pyz);
      ok_dpi = ok_dpi && lhs <= rhs + 1e-9;

      auto [pxx2, unused] = push_joint(j, m.x_given_y);
      double r = maximal_correlation(j);
      ok_tight =
          ok_tight && std::abs(maximal_correlation(pxx2) - r * r) <= 1e-8;
    }
    check("max_correlation_strong_data_processing", ok_dpi);
    check("max_correlation_backward_channel_tightness", ok_tight);
  }
  {
    bool ok = true;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      JointDistribution j = random_joint(3, 3, rng);
      double theta = poincare_constant(j);
      double brute = min_mmse_ratio(j, 30, rng());
      worst = std::max(worst, std::abs(theta - brute));
      ok = ok && std::abs(theta - brute) <= 1e-6;
    }
    check("poincare_constant_vs_mmse_ratio_minimization", ok,
          "worst gap " + fmt(worst));
  }
  {
    bool ok = true;
    for (int t = 0; t < 20; ++t) {
      JointDistribution j = random_joint(3, 4, rng);
      std::vector<double> fx(j.nx()), gy(j.ny());
      for (std::size_t i = 0; i < j.nx(); ++i) fx[i] = double(i);
      for (std::size_t i = 0; i < j.ny(); ++i) gy[i] = double(i);
      Marginals m = marginals(j);
      double ex = 0, ey = 0, exx = 0, eyy = 0, exy = 0;
      for (std::size_t x = 0; x < j.nx(); ++x)
        for (std::size_t y = 0; y < j.ny(); ++y) {
          double p = j.pxy[x][y];
          ex += p * fx[x];
          ey += p * gy[y];
          exx += p * fx[x] * fx[x];
          eyy += p * gy[y] * gy[y];
          exy += p * fx[x] * gy[y];
        }
      double pearson = (exy - ex * ey) /
                       std::sqrt((exx - ex * ex) * (eyy - ey * ey));
      ok = ok && maximal_correlation(j) >= std::abs(pearson) - 1e-9;
    }
    check("max_correlation_dominates_pearson", ok);
  }
  {
    bool ok = true;
    for (int t = 0; t < 20; ++t) {
      JointDistribution j = random_joint(3, 3, rng);
      Channel f = random_channel(3, 3, rng);
      f.in_labels = j.y_labels;
      LeakageReport base = audit_filter(j, f, 1.0, 1.0);
      double delta = 0.1 + 0.8 * (t / 20.0);
      LeakageReport wrapped =
          audit_filter(j, erasure_wrapper(f, delta), 1.0, 1.0);
      double s = 1.0 - delta;
      ok = ok && std::abs(wrapped.i_xz - s * base.i_xz) <= 1e-9 &&
           std::abs(wrapped.i_yz - s * base.i_yz) <= 1e-9 &&
           std::abs(wrapped.rho2_xz - s * base.rho2_xz) <= 1e-9;
    }
    check("erasure_wrapper_scales_all_leakage_measures", ok);
  }
  {
    bool ok = true;
    for (int t = 0; t < 10; ++t) {
      JointDistribution j = random_joint(3, 3, rng);
      double info = mutual_information(j);
      double eps = info * (t + 1) / 11.0;
      LeakageReport rep = audit_filter(j, erasure_filter(j, eps), eps, 1.0);
      Marginals m = marginals(j);
      ok = ok && std::abs(rep.i_xz - eps) <= 1e-9 &&
           std::abs(rep.i_yz - eps * entropy(m.py) / info) <= 1e-9;
    }
    check("erasure_filter_hits_budget_exactly", ok);
  }
  {
    bool ok = true;
    for (int t = 0; t < 10; ++t) {
      JointDistribution j = random_joint(3, 3, rng);
      Marginals m = marginals(j);
      double delta = 1e-3;
      for (std::size_t k = 0; k < j.ny(); ++k) {
        Channel f = singleton_probe_filter(j, j.y_labels[k], delta);
        LeakageReport rep = audit_filter(j, f, 1.0, 1.0);
        double slope_x =
            m.py.p[k] * kl_divergence(m.x_given_y.rows[k], m.px.p);
        double slope_y = -xlog2x(m.py.p[k]);
        if (slope_x > 1e-6)
          ok = ok && std::abs(rep.i_xz / delta - slope_x) <= 0.05 * slope_x;
        ok = ok && std::abs(rep.i_yz / delta - slope_y) <= 0.05 * slope_y;
      }
    }
    check("singleton_probe_first_order_leakage", ok);
  }
  {
    bool ok = true;
    double prev = 1.0;
    double delta = 0.5, p = 0.4;
    double cap = (1.0 - delta) * binary_entropy(p);
    for (int t = 1; t <= 10; ++t) {
      double eps = cap * t / 11.0;
      double alpha = bec_bsc_filter_alpha(eps, delta, p);
      double conv = alpha * (1 - p) + p * (1 - alpha);
      double resid =
          (1.0 - delta) * (binary_entropy(conv) - binary_entropy(alpha)) - eps;
      ok = ok && std::abs(resid) <= 1e-9 && alpha <= prev + 1e-12;
      prev = alpha;
    }
    check("bec_bsc_alpha_root_residual_and_monotonicity", ok);
  }
  {
    bool ok = true;
    SolverConfig cfg;
    cfg.restarts = 12;
    for (int t = 0; t < 8; ++t) {
      JointDistribution j = random_joint(2 + t % 3, 2 + (t / 2) % 3, rng);
      double info = mutual_information(j);
      if (info < 1e-9) continue;
      for (double frac : {0.25, 0.75}) {
        RatePrivacyPoint pt = solve_g(j, frac * info, cfg);
        ok = ok && pt.lower - 1e-6 <= pt.value && pt.value <= pt.upper + 1e-6 &&
             pt.achieved_leakage <= pt.epsilon + 1e-9;
      }
    }
    check("solver_value_between_bounds_with_feasible_certificate", ok);
  }
  {
    bool ok_pos = true, ok_zero = true;
    for (int t = 0; t < 5; ++t) {
      JointDistribution wide = random_joint(2, 3, rng);
      ok_pos = ok_pos && g0(wide).value > 1e-3;
      JointDistribution narrow = random_joint(3, 2, rng);
      ok_zero = ok_zero && g0(narrow).value <= 1e-4;
    }
    check("zero_leakage_extraction_dichotomy", ok_pos && ok_zero);
  }
  {
    bool ok = true;
    double worst = 1.0;
    for (int t = 0; t < 100; ++t) {
      std::size_t k = 1 + t % 3;
      std::vector<double> p = random_simplex(2 * k, rng);
      double lambda = t % 2 == 0 ? 0.1 : 0.3;
      double margin = mirrored_divergence_margin(p, lambda);
      worst = std::min(worst, margin);
      ok = ok && margin > 0.0;
    }
    check("mirrored_divergence_ratio_inequality", ok,
          "worst margin " + fmt(worst));
  }
  {
    JointDistribution bsc = joint_from_channel(
        ProbVector::make({"0", "1"}, {0.5, 0.5}),
        Channel::make({"0", "1"}, {"0", "1"}, {{0.8, 0.2}, {0.2, 0.8}}));
    LinearityResult lin = linearity_test(bsc);
    SlopeBound sb = slope_bound_at_zero(bsc);
    Marginals m = marginals(bsc);
    double hy_over_i = entropy(m.py) / mutual_information(bsc);
    bool ok = lin.verdict == LinearityVerdict::Linear &&
              std::abs(sb.bound - hy_over_i) <= 1e-9;
    check("linear_tradeoff_slope_consistency", ok);
  }
  {
    GaussianPair pair = GaussianPair::make(0.75, 1.0);
    double info = mutual_info_gaussian(pair);
    bool convex = true;
    for (int i = 1; i < 19; ++i) {
      double e0 = info * (i - 1) / 20.0, e1 = info * i / 20.0,
             e2 = info * (i + 1) / 20.0;
      convex = convex && g_gaussian(pair, e1) <
                             0.5 * (g_gaussian(pair, e0) + g_gaussian(pair, e2));
    }
    double eps = 0.5;
    double gs = gamma_star(pair, eps);
    bool audit = std::abs(0.5 * std::log2(1.0 + pair.var_y / (gs * gs)) -
                          g_gaussian(pair, eps)) <= 1e-10;
    double mmse_add = pair.var_y * gs * gs / (pair.var_y + gs * gs);
    bool mmse_ok = mmse_add >= mmse_lower_bound(pair, eps) - 1e-10;
    check("gaussian_tradeoff_convex_and_noise_audit",
          convex && audit && mmse_ok);
  }
  return out;
}

}  // namespace privex::verify
