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

#include "privex/rate_privacy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "privex/dependence.hpp"

namespace privex {

namespace {

constexpr double kIndepTol = 1e-12;

using Matrix = std::vector<std::vector<double>>;

enum class LeakKind { MutualInfo, MaxCorr };

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void project_simplex(std::vector<double>& v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, tau = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    css += u[i];
    double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) tau = t;
  }
  for (double& x : v) x = std::max(x - tau, 0.0);
}

std::vector<std::string> z_labels(std::size_t nz) {
  std::vector<std::string> out;
  out.reserve(nz);
  for (std::size_t z = 0; z < nz; ++z) out.push_back("z" + std::to_string(z));
  return out;
}

// Copies the rows of `src` into the left columns of a ny x nz matrix.
Matrix embed_rows(const Channel& src, std::size_t ny, std::size_t nz) {
  Matrix q(ny, std::vector<double>(nz, 0.0));
  for (std::size_t y = 0; y < ny && y < src.n_in(); ++y)
    for (std::size_t z = 0; z < nz && z < src.n_out(); ++z)
      q[y][z] = src.rows[y][z];
  for (std::size_t y = 0; y < ny; ++y) {
    double s = std::accumulate(q[y].begin(), q[y].end(), 0.0);
    if (s < kZeroTol) q[y][0] = 1.0;
    else
      for (double& v : q[y]) v /= s;
  }
  return q;
}

struct Problem {
  const JointDistribution* joint;
  std::vector<double> px;
  std::vector<double> py;
  double eps;
  LeakKind kind;
};

void forward(const Problem& p, const Matrix& q, Matrix& pxz,
             std::vector<double>& pz) {
  std::size_t nx = p.joint->nx(), ny = p.joint->ny(), nz = q.front().size();
  pxz.assign(nx, std::vector<double>(nz, 0.0));
  pz.assign(nz, 0.0);
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t z = 0; z < nz; ++z) {
      double f = q[y][z];
      if (f == 0.0) continue;
      pz[z] += p.py[y] * f;
      for (std::size_t x = 0; x < nx; ++x)
        pxz[x][z] += p.joint->pxy[x][y] * f;
    }
}

double value_of(const Problem& p, const Matrix& q,
                const std::vector<double>& pz) {
  double v = 0.0;
  for (std::size_t y = 0; y < p.py.size(); ++y)
    for (std::size_t z = 0; z < pz.size(); ++z) {
      double f = q[y][z];
      if (f < kZeroTol || pz[z] < kZeroTol) continue;
      v += p.py[y] * f * std::log2(f / pz[z]);
    }
  return v;
}

double mi_leak_of(const Problem& p, const Matrix& pxz,
                  const std::vector<double>& pz) {
  double v = 0.0;
  for (std::size_t x = 0; x < p.px.size(); ++x)
    for (std::size_t z = 0; z < pz.size(); ++z) {
      double m = pxz[x][z];
      if (m < kZeroTol) continue;
      v += m * std::log2(m / (p.px[x] * pz[z]));
    }
  return std::max(v, 0.0);
}

double rho2_leak_of(const Matrix& pxz) {
  double r = detail::rho_m_of_matrix(pxz);
  return r * r;
}

double leak_of(const Problem& p, const Matrix& pxz,
               const std::vector<double>& pz) {
  return p.kind == LeakKind::MutualInfo ? mi_leak_of(p, pxz, pz)
                                        : rho2_leak_of(pxz);
}

Matrix value_grad(const Problem& p, const Matrix& q,
                  const std::vector<double>& pz) {
  std::size_t ny = p.py.size(), nz = pz.size();
  Matrix g(ny, std::vector<double>(nz, 0.0));
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t z = 0; z < nz; ++z)
      g[y][z] = p.py[y] * std::log2(std::max(q[y][z], 1e-16) /
                                    std::max(pz[z], 1e-16));
  return g;
}

Matrix mi_leak_grad(const Problem& p, const Matrix& pxz,
                    const std::vector<double>& pz) {
  std::size_t nx = p.px.size(), ny = p.py.size(), nz = pz.size();
  Matrix g(ny, std::vector<double>(nz, 0.0));
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t z = 0; z < nz; ++z) {
      double s = 0.0;
      for (std::size_t x = 0; x < nx; ++x) {
        double pj = p.joint->pxy[x][y];
        if (pj < kZeroTol) continue;
        double ratio = std::max(pxz[x][z], 1e-16) /
                       (std::max(pz[z], 1e-16) * p.px[x]);
        s += pj * std::log2(std::max(ratio, 1e-16));
      }
      g[y][z] = s;
    }
  return g;
}

Matrix rho2_leak_grad(const Problem& p, const Matrix& pxz) {
  std::size_t nx = p.px.size(), ny = p.py.size(), nz = pxz.front().size();
  const double h = 1e-6;
  Matrix g(ny, std::vector<double>(nz, 0.0));
  Matrix pert = pxz;
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t z = 0; z < nz; ++z) {
      for (std::size_t x = 0; x < nx; ++x)
        pert[x][z] = pxz[x][z] + h * p.joint->pxy[x][y];
      double up = rho2_leak_of(pert);
      for (std::size_t x = 0; x < nx; ++x)
        pert[x][z] = pxz[x][z] - h * p.joint->pxy[x][y];
      double dn = rho2_leak_of(pert);
      for (std::size_t x = 0; x < nx; ++x) pert[x][z] = pxz[x][z];
      g[y][z] = (up - dn) / (2.0 * h);
    }
  return g;
}

// Penalized projected ascent of I(Y;Z) - mu * max(0, leak - eps)^2.
void ascend(const Problem& p, const SolverConfig& cfg, Matrix& q) {
  std::size_t ny = p.py.size(), nz = q.front().size();
  Matrix pxz;
  std::vector<double> pz;
  for (int stage = 0; stage < cfg.penalty_stages; ++stage) {
    double mu = cfg.penalty_init * std::pow(cfg.penalty_growth, stage);
    for (int it = 0; it < cfg.max_iters; ++it) {
      forward(p, q, pxz, pz);
      double viol = std::max(leak_of(p, pxz, pz) - p.eps, 0.0);
      Matrix grad = value_grad(p, q, pz);
      if (viol > 0.0) {
        Matrix lg = p.kind == LeakKind::MutualInfo
                        ? mi_leak_grad(p, pxz, pz)
                        : rho2_leak_grad(p, pxz);
        double w = 2.0 * mu * viol;
        for (std::size_t y = 0; y < ny; ++y)
          for (std::size_t z = 0; z < nz; ++z) grad[y][z] -= w * lg[y][z];
      }
      double step = cfg.step_init / std::sqrt(1.0 + it);
      double moved = 0.0;
      for (std::size_t y = 0; y < ny; ++y) {
        double scale = step / std::max(p.py[y], 1e-12);
        std::vector<double> row = q[y];
        for (std::size_t z = 0; z < nz; ++z) row[z] += scale * grad[y][z];
        project_simplex(row);
        for (std::size_t z = 0; z < nz; ++z)
          moved += std::abs(row[z] - q[y][z]);
        q[y] = std::move(row);
      }
      if (moved < cfg.tolerance) break;
    }
  }
}

struct Candidate {
  Channel filter;
  LeakageReport report;
};

double leakage_value(const Candidate& c, LeakKind kind) {
  return kind == LeakKind::MutualInfo ? c.report.i_xz : c.report.rho2_xz;
}

bool is_feasible(const Candidate& c, LeakKind kind) {
  return kind == LeakKind::MutualInfo ? c.report.feasible_mi
                                      : c.report.feasible_mc;
}

Candidate audited(const JointDistribution& joint, Channel filter, double eps) {
  LeakageReport rep = audit_filter(joint, filter, eps, eps);
  return Candidate{std::move(filter), rep};
}

// Infeasible candidates are rescaled onto the constraint boundary by an
// output-side erasure stage, which shrinks leakage and value by the same
// exactly-known factor.
Candidate repaired(const JointDistribution& joint, Candidate c, double eps,
                   LeakKind kind) {
  if (is_feasible(c, kind)) return c;
  double leak = leakage_value(c, kind);
  double delta = leak <= 0.0 ? 1.0 : 1.0 - std::clamp(eps / leak, 0.0, 1.0);
  return audited(joint, erasure_wrapper(c.filter, delta), eps);
}

// Convex split over disjoint output blocks: identity with weight lambda,
// `zero_leak` with weight 1-lambda. Both leakage and extraction mix linearly
// because the block indicator is independent of (X, Y).
Channel timeshare_filter(const JointDistribution& joint,
                         const Channel& zero_leak, double lambda) {
  std::size_t ny = joint.ny(), na = zero_leak.n_out();
  std::vector<std::string> out;
  for (const auto& l : joint.y_labels) out.push_back("i:" + l);
  for (const auto& l : zero_leak.out_labels) out.push_back("m:" + l);
  Matrix rows(ny, std::vector<double>(ny + na, 0.0));
  for (std::size_t y = 0; y < ny; ++y) {
    rows[y][y] = lambda;
    for (std::size_t z = 0; z < na; ++z)
      rows[y][ny + z] = (1.0 - lambda) * zero_leak.rows[y][z];
  }
  return Channel{joint.y_labels, std::move(out), std::move(rows)};
}

struct ErasureStructure {
  double delta;
  std::size_t e_column;
};

std::optional<ErasureStructure> erasure_structure(const Channel& ch,
                                                  double tol) {
  std::size_t n = ch.n_in(), m = ch.n_out();
  if (n < 1 || m < 2) return std::nullopt;
  for (std::size_t je = 0; je < m; ++je) {
    double lo = 1.0, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lo = std::min(lo, ch.rows[i][je]);
      hi = std::max(hi, ch.rows[i][je]);
    }
    if (hi - lo > tol) continue;
    double delta = 0.5 * (hi + lo);
    if (delta >= 1.0 - tol) continue;
    std::vector<int> col_use(m, 0);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      int hits = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if (j == je) continue;
        double v = ch.rows[i][j];
        if (v > tol) {
          if (std::abs(v - (1.0 - delta)) > tol) ok = false;
          ++hits;
          if (++col_use[j] > 1) ok = false;
        }
      }
      if (hits != 1) ok = false;
    }
    if (ok) return ErasureStructure{std::max(delta, 0.0), je};
  }
  return std::nullopt;
}

// Zero-leakage channel from a plain permutation-like matrix (delta = 0).
bool is_permutation_channel(const Channel& ch, double tol) {
  std::size_t n = ch.n_in(), m = ch.n_out();
  std::vector<int> col_use(m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    int hits = 0;
    for (std::size_t j = 0; j < m; ++j) {
      double v = ch.rows[i][j];
      if (v > tol) {
        if (std::abs(v - 1.0) > tol) return false;
        ++hits;
        if (++col_use[j] > 1) return false;
      }
    }
    if (hits != 1) return false;
  }
  return true;
}

// Binary hidden output built from a left null vector of the conditional-row
// matrix: P(Z=1|y) = 0.5 + s*u_y keeps P_{X|Z} = P_X exactly while Z still
// depends on Y.
std::vector<Channel> null_space_filters(const JointDistribution& joint,
                                        const Marginals& m) {
  std::size_t nx = joint.nx(), ny = joint.ny();
  Eigen::MatrixXd a(ny, nx);
  for (std::size_t y = 0; y < ny; ++y)
    for (std::size_t x = 0; x < nx; ++x) a(y, x) = m.x_given_y.rows[y][x];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
  std::vector<Channel> out;
  for (Eigen::Index k = 0; k < svd.matrixU().cols(); ++k) {
    double sv = k < svd.singularValues().size() ? svd.singularValues()(k) : 0.0;
    if (sv > 1e-9) continue;
    Eigen::VectorXd w = svd.matrixU().col(k);
    std::vector<double> u(ny);
    double umax = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
      u[y] = w(y) / std::max(m.py.p[y], 1e-300);
      umax = std::max(umax, std::abs(u[y]));
    }
    if (umax < 1e-12) continue;
    double s = 0.5 / umax;
    Matrix rows(ny, std::vector<double>(2, 0.0));
    for (std::size_t y = 0; y < ny; ++y) {
      double q1 = std::clamp(0.5 + s * u[y], 0.0, 1.0);
      rows[y][0] = 1.0 - q1;
      rows[y][1] = q1;
    }
    out.push_back(Channel{joint.y_labels, {"z0", "z1"}, std::move(rows)});
  }
  return out;
}

Channel constant_filter(const std::vector<std::string>& y_labels) {
  Matrix rows(y_labels.size(), std::vector<double>(1, 1.0));
  return Channel{y_labels, {erasure_label(y_labels)}, std::move(rows)};
}

Channel mixing_filter(const JointDistribution& joint, std::size_t e_column) {
  std::size_t ny = joint.ny();
  double share = 1.0 / static_cast<double>(ny - 1);
  Matrix rows(ny, std::vector<double>(ny, 0.0));
  for (std::size_t y = 0; y < ny; ++y) {
    if (y == e_column) {
      rows[y][e_column] = 1.0;
    } else {
      for (std::size_t z = 0; z < ny; ++z)
        if (z != e_column) rows[y][z] = share;
    }
  }
  return Channel{joint.y_labels, joint.y_labels, std::move(rows)};
}

RatePrivacyPoint identity_point(const JointDistribution& joint, double eps,
                                double hy, LeakKind kind) {
  Channel id = Channel::identity(joint.y_labels);
  Candidate c = audited(joint, id, eps);
  return RatePrivacyPoint{eps,        hy, c.report.i_yz, hy,
                          c.filter, leakage_value(c, kind)};
}

Candidate best_candidate(const JointDistribution& joint, double eps,
                         const SolverConfig& cfg, LeakKind kind,
                         const std::vector<Channel>& extra_seeds) {
  Marginals m = marginals(joint);
  std::size_t ny = joint.ny();
  std::size_t nz = cfg.z_cardinality > 1
                       ? static_cast<std::size_t>(cfg.z_cardinality)
                       : ny + 1;

  Problem prob{&joint, m.px.p, m.py.p, eps, kind};

  std::vector<Matrix> starts;
  double info = mutual_information(joint);
  if (kind == LeakKind::MutualInfo && info > kIndepTol && eps <= info)
    starts.push_back(embed_rows(erasure_filter(joint, eps), ny, nz));
  if (nz >= ny) starts.push_back(embed_rows(Channel::identity(joint.y_labels), ny, nz));
  for (const auto& y : joint.y_labels)
    starts.push_back(embed_rows(singleton_probe_filter(joint, y, 1.0), ny, nz));
  for (const auto& s : extra_seeds) starts.push_back(embed_rows(s, ny, nz));

  std::size_t n_starts =
      std::max<std::size_t>(starts.size(),
                            static_cast<std::size_t>(std::max(cfg.restarts, 1)));
  for (std::size_t i = starts.size(); i < n_starts; ++i) {
    std::mt19937_64 rng(splitmix64(cfg.master_seed ^ (0xabcdef12345ULL + i)));
    std::exponential_distribution<double> expo(1.0);
    Matrix q(ny, std::vector<double>(nz, 0.0));
    for (std::size_t y = 0; y < ny; ++y) {
      double s = 0.0;
      for (std::size_t z = 0; z < nz; ++z) s += q[y][z] = expo(rng);
      for (double& v : q[y]) v /= s;
    }
    starts.push_back(std::move(q));
  }

  unsigned hw = std::thread::hardware_concurrency();
  std::size_t n_threads = cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads)
                                          : std::max(1u, hw);
  n_threads = std::min(n_threads, starts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= starts.size()) return;
      ascend(prob, cfg, starts[i]);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<Candidate> cands;
  auto add = [&](Channel f) {
    cands.push_back(repaired(joint, audited(joint, std::move(f), eps), eps,
                             kind));
  };
  for (auto& q : starts)
    add(Channel{joint.y_labels, z_labels(nz), std::move(q)});
  for (const auto& s : extra_seeds) add(s);
  if (kind == LeakKind::MutualInfo && info > kIndepTol && eps <= info)
    add(erasure_filter(joint, eps));

  const Candidate* best = nullptr;
  std::string best_key;
  for (const auto& c : cands) {
    if (!is_feasible(c, kind)) continue;
    if (!best || c.report.i_yz > best->report.i_yz + 1e-12) {
      best = &c;
      best_key.clear();
    } else if (std::abs(c.report.i_yz - best->report.i_yz) <= 1e-12) {
      if (best_key.empty()) best_key = to_json(best->filter);
      std::string key = to_json(c.filter);
      if (key < best_key) {
        best = &c;
        best_key = std::move(key);
      }
    }
  }
  if (!best) {
    Candidate c = audited(joint, constant_filter(joint.y_labels), eps);
    return c;
  }
  return *best;
}

RatePrivacyPoint solve_g_impl(const JointDistribution& joint, double eps,
                              const SolverConfig& cfg, const G0Result* g0res,
                              const Channel* warm) {
  Marginals m = marginals(joint);
  double info = mutual_information(joint);
  double hy = entropy(m.py);
  if (info < kIndepTol || eps >= info - 1e-15) {
    RatePrivacyPoint pt = identity_point(joint, eps, hy, LeakKind::MutualInfo);
    return pt;
  }

  std::vector<Channel> seeds;
  double g0v = 0.0;
  if (g0res) {
    seeds.push_back(g0res->filter);
    g0v = g0res->value;
    LeakageReport rep = audit_filter(joint, g0res->filter, eps, eps);
    double leak0 = rep.i_xz;
    if (g0v > 1e-12 && leak0 <= eps && info - leak0 > 1e-12) {
      double lambda = (eps - leak0) / (info - leak0);
      seeds.push_back(timeshare_filter(joint, g0res->filter,
                                       std::clamp(lambda, 0.0, 1.0)));
    }
  }
  if (warm) seeds.push_back(*warm);

  Candidate best =
      best_candidate(joint, eps, cfg, LeakKind::MutualInfo, seeds);
  BoundsG b = bounds_g_with_g0(joint, eps, g0v);
  return RatePrivacyPoint{eps,          b.lower,        best.report.i_yz,
                          b.upper,      best.filter,    best.report.i_xz};
}

}  // namespace

bool detect_biso(const Channel& reverse_channel, double tol) {
  if (reverse_channel.n_in() != 2)
    fail(ErrorCode::NotBinaryInput, "detect_biso: channel input is not binary");
  const auto& r0 = reverse_channel.rows[0];
  const auto& r1 = reverse_channel.rows[1];
  std::size_t m = r0.size();
  std::vector<bool> used(m, false);
  for (std::size_t j = 0; j < m; ++j) {
    if (used[j]) continue;
    if (std::abs(r0[j] - r1[j]) <= tol) {
      used[j] = true;
      continue;
    }
    bool paired = false;
    for (std::size_t k = 0; k < m && !paired; ++k) {
      if (k == j || used[k]) continue;
      if (std::abs(r0[j] - r1[k]) <= tol && std::abs(r0[k] - r1[j]) <= tol) {
        used[j] = used[k] = true;
        paired = true;
      }
    }
    if (!paired) return false;
  }
  return true;
}

std::optional<double> detect_erasure(const Channel& forward_channel,
                                     double tol) {
  if (is_permutation_channel(forward_channel, tol)) return 0.0;
  auto s = erasure_structure(forward_channel, tol);
  if (!s) return std::nullopt;
  return s->delta;
}

G0Result g0(const JointDistribution& joint, const SolverConfig& cfg) {
  (void)cfg;
  WeakIndependenceResult wi = weak_independence(joint);
  if (!wi.weakly_independent)
    return G0Result{0.0, constant_filter(joint.y_labels)};
  Marginals m = marginals(joint);
  if (auto s = erasure_structure(m.y_given_x, 1e-9); s && s->delta > 1e-9) {
    Channel f = mixing_filter(joint, s->e_column);
    LeakageReport rep = audit_filter(joint, f, 0.0, 0.0);
    return G0Result{rep.i_yz, std::move(f)};
  }
  std::vector<Channel> cands = null_space_filters(joint, m);
  cands.push_back(Channel::identity(joint.y_labels));
  const Channel* best = nullptr;
  double best_v = -1.0;
  for (const auto& c : cands) {
    LeakageReport rep = audit_filter(joint, c, 0.0, 0.0);
    if (rep.i_xz > 1e-9) continue;
    if (rep.i_yz > best_v) {
      best_v = rep.i_yz;
      best = &c;
    }
  }
  if (!best) return G0Result{0.0, constant_filter(joint.y_labels)};
  return G0Result{best_v, *best};
}

BoundsG bounds_g_with_g0(const JointDistribution& joint, double eps,
                         double g0_value) {
  double info = mutual_information(joint);
  if (info < kIndepTol)
    fail(ErrorCode::IndependentSources, "bounds_g: I(X;Y) = 0");
  Marginals m = marginals(joint);
  double hy = entropy(m.py);
  if (eps >= info) return BoundsG{hy, hy};
  double base = eps * hy / info;
  double lower = base + std::max(g0_value, 0.0) * (1.0 - eps / info);
  double upper = std::min(conditional_entropy(joint) + eps, hy);
  if (joint.ny() == 2 && detect_biso(m.x_given_y)) {
    ProbVector unif =
        ProbVector::make(joint.y_labels, std::vector<double>(2, 0.5));
    double cap = mutual_information(joint_from_channel(unif, m.x_given_y));
    if (cap > kIndepTol)
      upper = std::min(upper, hy - (info - eps) / cap);
  }
  return BoundsG{lower, upper};
}

BoundsG bounds_g(const JointDistribution& joint, double eps,
                 const SolverConfig& config) {
  return bounds_g_with_g0(joint, eps, g0(joint, config).value);
}

RatePrivacyPoint solve_g(const JointDistribution& joint, double eps,
                         const SolverConfig& config) {
  if (eps < 0.0) fail(ErrorCode::EpsilonOutOfRange, "solve_g: eps < 0");
  G0Result zero = g0(joint, config);
  return solve_g_impl(joint, eps, config, &zero, nullptr);
}

RatePrivacyPoint solve_g_hat(const JointDistribution& joint, double eps,
                             const SolverConfig& config) {
  if (eps < 0.0 || eps > 1.0)
    fail(ErrorCode::EpsilonOutOfRange, "solve_g_hat: eps outside [0,1]");
  Marginals m = marginals(joint);
  double hy = entropy(m.py);
  double rho = maximal_correlation(joint);
  double rho2 = rho * rho;
  if (rho2 < kIndepTol || eps >= rho2)
    return identity_point(joint, eps, hy, LeakKind::MaxCorr);

  G0Result zero = g0(joint, config);
  std::vector<Channel> seeds;
  seeds.push_back(zero.filter);
  seeds.push_back(erasure_wrapper(Channel::identity(joint.y_labels),
                                  1.0 - eps / rho2));
  Candidate best = best_candidate(joint, eps, config, LeakKind::MaxCorr, seeds);

  double lower = eps * hy / rho2;
  double nx = static_cast<double>(joint.nx());
  double upper =
      std::min(hy, std::log2((nx - 1.0) * eps + 1.0) + conditional_entropy(joint));
  return RatePrivacyPoint{eps,          lower,       best.report.i_yz,
                          upper,        best.filter, best.report.rho2_xz};
}

std::optional<ClosedFormResult> closed_form(const JointDistribution& joint,
                                            double eps) {
  Marginals m = marginals(joint);
  double info = mutual_information(joint);
  if (auto d = detect_erasure(m.y_given_x); d && *d > 1e-12) {
    return ClosedFormResult{ClosedFormKind::ErasureObservation,
                            conditional_entropy(joint) + std::min(eps, info)};
  }
  if (joint.ny() == 2 && std::abs(m.py.p[0] - 0.5) <= 1e-9 &&
      detect_biso(m.x_given_y) && info > kIndepTol) {
    return ClosedFormResult{ClosedFormKind::SymmetricBinaryUniform,
                            std::min(eps, info) / info};
  }
  return std::nullopt;
}

SlopeBound slope_bound_at_zero(const JointDistribution& joint) {
  WeakIndependenceResult wi = weak_independence(joint);
  if (wi.weakly_independent)
    fail(ErrorCode::WeaklyIndependent,
         "slope_bound_at_zero: zero-leakage extraction is already positive");
  Marginals m = marginals(joint);
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t y = 0; y < joint.ny(); ++y) {
    double num = -std::log2(m.py.p[y]);
    double den = kl_divergence(m.x_given_y.rows[y], m.px.p);
    double ratio = den < 1e-12 ? std::numeric_limits<double>::infinity()
                               : num / den;
    if (ratio > best) {
      best = ratio;
      arg = y;
    }
  }
  return SlopeBound{best, joint.y_labels[arg]};
}

LinearityResult linearity_test(const JointDistribution& joint) {
  WeakIndependenceResult wi = weak_independence(joint);
  if (wi.weakly_independent)
    fail(ErrorCode::WeaklyIndependent,
         "linearity_test: zero-leakage extraction is already positive");
  Marginals m = marginals(joint);
  std::vector<double> ratios(joint.ny());
  for (std::size_t y = 0; y < joint.ny(); ++y) {
    double num = -std::log2(m.py.p[y]);
    double den = kl_divergence(m.x_given_y.rows[y], m.px.p);
    ratios[y] = den < 1e-12 ? std::numeric_limits<double>::infinity()
                            : num / den;
  }
  auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  LinearityResult out{LinearityVerdict::LinearPossible, ratios};
  if (!std::isfinite(*hi) || *hi - *lo > 1e-9) {
    out.verdict = LinearityVerdict::NotLinear;
    return out;
  }
  if (joint.ny() == 2 && detect_biso(m.x_given_y) &&
      std::abs(m.py.p[0] - 0.5) <= 1e-9)
    out.verdict = LinearityVerdict::Linear;
  return out;
}

std::vector<RatePrivacyPoint> curve_g(const JointDistribution& joint,
                                      const std::vector<double>& eps_grid,
                                      const SolverConfig& config) {
  if (!std::is_sorted(eps_grid.begin(), eps_grid.end()))
    fail(ErrorCode::InputError, "curve_g: grid is not sorted");
  G0Result zero = g0(joint, config);
  std::vector<RatePrivacyPoint> out;
  const Channel* warm = nullptr;
  for (double eps : eps_grid) {
    RatePrivacyPoint pt = solve_g_impl(joint, eps, config, &zero, warm);
    if (!out.empty() && pt.value < out.back().value) {
      pt.value = out.back().value;
      pt.filter = out.back().filter;
      pt.achieved_leakage = out.back().achieved_leakage;
    }
    out.push_back(std::move(pt));
    warm = &out.back().filter;
  }
  return out;
}

double funnel_dual(const JointDistribution& joint, double rate,
                   const SolverConfig& config) {
  Marginals m = marginals(joint);
  double hy = entropy(m.py);
  if (rate > hy + 1e-9)
    fail(ErrorCode::RateUnachievable, "funnel_dual: rate exceeds H(Y)");
  if (rate <= 0.0) return 0.0;
  double info = mutual_information(joint);
  if (info < kIndepTol) return 0.0;
  G0Result zero = g0(joint, config);
  if (zero.value >= rate) return 0.0;
  double lo = 0.0, hi = info;
  while (hi - lo > 1e-4) {
    double mid = 0.5 * (lo + hi);
    RatePrivacyPoint pt = solve_g_impl(joint, mid, config, &zero, nullptr);
    if (pt.value >= rate - 1e-12) hi = mid;
    else lo = mid;
  }
  return hi;
}

double dilution_outer(const JointDistribution& joint, double delta_a,
                      const SolverConfig& config) {
  Marginals m = marginals(joint);
  if (delta_a < 0.0 || delta_a > entropy(m.py) + 1e-9)
    fail(ErrorCode::OutOfRange, "dilution_outer: amplification outside [0, H(Y)]");
  return funnel_dual(joint, delta_a, config);
}

}  // namespace privex
