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

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "privex/dependence.hpp"
#include "privex/filters.hpp"
#include "privex/gaussian.hpp"
#include "privex/prob.hpp"
#include "privex/rate_privacy.hpp"
#include "privex/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitVerifyFailed = 4;

int exit_code_for(privex::ErrorCode code) {
  using privex::ErrorCode;
  switch (code) {
    case ErrorCode::NegativeEntry:
    case ErrorCode::ZeroTotalMass:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::AlphabetMismatch:
    case ErrorCode::UnknownSymbol:
    case ErrorCode::NotBinaryInput:
    case ErrorCode::InputError:
      return kExitInput;
    default:
      return kExitInfeasible;
  }
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    privex::fail(privex::ErrorCode::InputError, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    privex::fail(privex::ErrorCode::InputError, "cannot write file: " + path);
  out << text;
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

struct CommonOpts {
  std::string input;
  std::string out;
  std::string format = "csv";
  int restarts = 50;
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

std::uint64_t resolve_seed(const CommonOpts& c) {
  if (c.seed_set) return c.seed;
  if (const char* env = std::getenv("PRIVEX_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      privex::fail(privex::ErrorCode::InputError,
                   "PRIVEX_SEED is not an unsigned integer");
    }
  }
  return 1;
}

privex::SolverConfig solver_config(const CommonOpts& c) {
  privex::SolverConfig cfg;
  cfg.restarts = c.restarts;
  cfg.threads = c.threads;
  cfg.master_seed = resolve_seed(c);
  return cfg;
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const std::string& input_digest,
                    const nlohmann::json& config_echo, double wall_ms) {
  nlohmann::json m;
  m["command"] = command;
  m["input_digest"] = input_digest;
  m["config"] = config_echo;
  m["tool_version"] = kVersion;
  m["wall_ms"] = wall_ms;
  write_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

// Grid spec "a:b:n" with inclusive endpoints; "I" stands for the mutual
// information of the loaded pair.
std::vector<double> parse_grid(const std::string& spec, double info) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.size() != 3)
    privex::fail(privex::ErrorCode::InputError,
                 "grid must be a:b:n, got: " + spec);
  auto value = [&](const std::string& s) -> double {
    if (s == "I") return info;
    try {
      return std::stod(s);
    } catch (...) {
      privex::fail(privex::ErrorCode::InputError, "bad grid endpoint: " + s);
    }
  };
  double a = value(parts[0]), b = value(parts[1]);
  int n = 0;
  try {
    n = std::stoi(parts[2]);
  } catch (...) {
    privex::fail(privex::ErrorCode::InputError, "bad grid count: " + parts[2]);
  }
  if (n < 1)
    privex::fail(privex::ErrorCode::InputError, "grid count must be >= 1");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = n == 1 ? a : a + (b - a) * i / double(n - 1);
  return g;
}

std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

int cmd_analyze(const CommonOpts& opts) {
  using namespace privex;
  JointDistribution joint = joint_from_json(read_file(opts.input));
  Marginals m = marginals(joint);
  double info = mutual_information(joint);
  std::cout << "H(X) = " << fmt12(entropy(m.px)) << "\n";
  std::cout << "H(Y) = " << fmt12(entropy(m.py)) << "\n";
  std::cout << "H(Y|X) = " << fmt12(conditional_entropy(joint)) << "\n";
  std::cout << "I(X;Y) = " << fmt12(info) << "\n";
  double rho = maximal_correlation(joint);
  std::cout << "rho_m = " << fmt12(rho) << "\n";
  std::cout << "poincare = " << fmt12(poincare_constant(joint)) << "\n";
  WeakIndependenceResult wi = weak_independence(joint);
  std::cout << "weakly_independent = " << (wi.weakly_independent ? "yes" : "no")
            << " (reverse-channel rank " << wi.rank << " of " << joint.ny()
            << ")\n";
  if (info < 1e-12) {
    std::cout << "note = X and Y are independent; every filter is feasible and"
                 " the trade-off is flat at H(Y)\n";
    return kExitOk;
  }
  if (joint.ny() == 2)
    std::cout << "reverse_channel_symmetric_binary = "
              << (detect_biso(m.x_given_y) ? "yes" : "no") << "\n";
  if (auto d = detect_erasure(m.y_given_x))
    std::cout << "erasure_observation_delta = " << fmt12(*d) << "\n";
  else
    std::cout << "erasure_observation_delta = none\n";
  if (auto cf = closed_form(joint, info))
    std::cout << "closed_form = available\n";
  else
    std::cout << "closed_form = none\n";
  if (wi.weakly_independent) {
    std::cout << "zero_leakage_extraction = positive\n";
  } else {
    SlopeBound sb = slope_bound_at_zero(joint);
    std::cout << "slope_bound_at_zero = " << fmt12(sb.bound) << " (argmax y = "
              << sb.argmax_y << ")\n";
    LinearityResult lin = linearity_test(joint);
    const char* v = lin.verdict == LinearityVerdict::Linear ? "Linear"
                    : lin.verdict == LinearityVerdict::NotLinear
                        ? "NotLinear"
                        : "LinearPossible";
    std::cout << "linearity = " << v << "\n";
  }
  return kExitOk;
}

int cmd_curve(const CommonOpts& opts, const std::string& grid_spec,
              bool hat_mode, const std::string& command) {
  using namespace privex;
  std::string text = read_file(opts.input);
  JointDistribution joint = joint_from_json(text);
  double rho = maximal_correlation(joint);
  double limit = hat_mode ? rho * rho : mutual_information(joint);
  std::vector<double> grid = parse_grid(grid_spec, limit);
  SolverConfig cfg = solver_config(opts);

  auto t0 = std::chrono::steady_clock::now();
  std::vector<RatePrivacyPoint> points;
  if (hat_mode) {
    for (double eps : grid) points.push_back(solve_g_hat(joint, eps, cfg));
  } else {
    points = curve_g(joint, grid, cfg);
  }
  double wall = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();

  std::string body;
  if (opts.format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : points) {
      nlohmann::json row;
      row["epsilon"] = fmt12(p.epsilon);
      row["lower"] = fmt12(p.lower);
      row["value"] = fmt12(p.value);
      row["upper"] = fmt12(p.upper);
      row["leakage"] = fmt12(p.achieved_leakage);
      arr.push_back(row);
    }
    body = arr.dump(2) + "\n";
  } else {
    body = "epsilon,lower,value,upper,leakage\n";
    for (const auto& p : points)
      body += fmt12(p.epsilon) + "," + fmt12(p.lower) + "," + fmt12(p.value) +
              "," + fmt12(p.upper) + "," + fmt12(p.achieved_leakage) + "\n";
  }
  if (opts.out.empty()) {
    std::cout << body;
  } else {
    write_file(opts.out, body);
    nlohmann::json echo{{"seed", cfg.master_seed},
                        {"restarts", cfg.restarts},
                        {"threads", cfg.threads},
                        {"grid", grid_spec},
                        {"variant", hat_mode ? "max_correlation" : "mutual_information"}};
    write_manifest(opts.out, command, fnv1a_hex(text), echo, wall);
  }
  return kExitOk;
}

int cmd_gaussian(const CommonOpts& opts, double rho2, double var_y,
                 std::optional<double> eps, const std::string& grid_spec,
                 const std::string& command) {
  using namespace privex;
  GaussianPair pair = GaussianPair::make(rho2, var_y);
  double info = mutual_info_gaussian(pair);
  if (eps && grid_spec.empty()) {
    std::cout << fmt12(g_gaussian(pair, *eps)) << "\n";
    return kExitOk;
  }
  if (grid_spec.empty())
    fail(ErrorCode::InputError, "gaussian: provide --eps or --grid");
  std::vector<double> grid = parse_grid(grid_spec, info);
  std::string body = "epsilon,g_closed,g_hat_closed\n";
  for (double e : grid) {
    std::string g = e < info ? fmt12(g_gaussian(pair, e)) : "inf";
    std::string gh = e < pair.rho2 ? fmt12(g_hat_gaussian(pair, e)) : "inf";
    body += fmt12(e) + "," + g + "," + gh + "\n";
  }
  if (opts.out.empty()) {
    std::cout << body;
  } else {
    write_file(opts.out, body);
    nlohmann::json echo{{"rho2", rho2}, {"var_y", var_y}, {"grid", grid_spec}};
    write_manifest(opts.out, command, fnv1a_hex(""), echo, 0.0);
  }
  return kExitOk;
}

int cmd_quantized(const CommonOpts& opts, double rho2, double var_y,
                  double eps, const std::vector<int>& m_list,
                  const std::string& command) {
  using namespace privex;
  GaussianPair pair = GaussianPair::make(rho2, var_y);
  auto t0 = std::chrono::steady_clock::now();
  std::vector<ConvergenceRow> rows = convergence_report(pair, eps, m_list);
  double wall = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  std::string body = "M,gamma,g_eps_M,g_closed,gap,quantizer_entropy_diag\n";
  double target = g_gaussian(pair, eps);
  for (const auto& r : rows)
    body += std::to_string(r.M) + "," + fmt12(r.gamma) + "," + fmt12(r.value) +
            "," + fmt12(target) + "," + fmt12(r.gap) + "," +
            fmt12(r.h_qm_minus_m) + "\n";
  if (opts.out.empty()) {
    std::cout << body;
  } else {
    write_file(opts.out, body);
    nlohmann::json echo{
        {"rho2", rho2}, {"var_y", var_y}, {"eps", eps}, {"M", m_list}};
    write_manifest(opts.out, command, fnv1a_hex(""), echo, wall);
  }
  return kExitOk;
}

int cmd_filter(const CommonOpts& opts, double eps, bool hat_mode,
               const std::string& command) {
  using namespace privex;
  std::string text = read_file(opts.input);
  JointDistribution joint = joint_from_json(text);
  SolverConfig cfg = solver_config(opts);
  auto t0 = std::chrono::steady_clock::now();
  RatePrivacyPoint pt = hat_mode ? solve_g_hat(joint, eps, cfg)
                                 : solve_g(joint, eps, cfg);
  double wall = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
  std::cout << "epsilon = " << fmt12(pt.epsilon) << "\n";
  std::cout << "value = " << fmt12(pt.value) << "\n";
  std::cout << "lower = " << fmt12(pt.lower) << "\n";
  std::cout << "upper = " << fmt12(pt.upper) << "\n";
  std::cout << "leakage = " << fmt12(pt.achieved_leakage) << "\n";
  if (!opts.out.empty()) {
    write_file(opts.out, to_json(pt.filter) + "\n");
    nlohmann::json echo{{"seed", cfg.master_seed},
                        {"restarts", cfg.restarts},
                        {"threads", cfg.threads},
                        {"eps", eps},
                        {"variant", hat_mode ? "max_correlation" : "mutual_information"},
                        {"value", fmt12(pt.value)},
                        {"leakage", fmt12(pt.achieved_leakage)}};
    write_manifest(opts.out, command, fnv1a_hex(text), echo, wall);
  }
  return kExitOk;
}

int cmd_funnel(const CommonOpts& opts, double rate, bool dilution) {
  using namespace privex;
  JointDistribution joint = joint_from_json(read_file(opts.input));
  SolverConfig cfg = solver_config(opts);
  double v = dilution ? dilution_outer(joint, rate, cfg)
                      : funnel_dual(joint, rate, cfg);
  std::cout << fmt12(v) << "\n";
  return kExitOk;
}

int cmd_verify(const CommonOpts& opts) {
  auto results = privex::verify::run_all(resolve_seed(opts));
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
    all = all && r.pass;
  }
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rate-privacy trade-off toolkit"};
  app.require_subcommand(1);
  std::string command = join_args(argc, argv);

  CommonOpts opts;
  double eps = 0.0, rho2 = 0.5, var_y = 1.0, rate = 0.0;
  std::string grid_spec;
  std::vector<int> m_list{2, 4, 6, 8};
  bool hat_mode = false;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    if (needs_input)
      sub->add_option("--input", opts.input, "joint distribution JSON file")
          ->required();
    sub->add_option("--out", opts.out, "output file");
    sub->add_option("--format", opts.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--restarts", opts.restarts, "solver restarts");
    sub->add_option("--threads", opts.threads, "worker threads (0 = auto)");
    sub->add_option("--seed", opts.seed, "master seed")
        ->each([&](const std::string&) { opts.seed_set = true; });
  };

  CLI::App* analyze = app.add_subcommand("analyze", "summarize a joint distribution");
  add_common(analyze, true);

  CLI::App* curve = app.add_subcommand("curve", "trade-off curve over a leakage grid");
  add_common(curve, true);
  curve->add_option("--grid", grid_spec, "a:b:n, I = I(X;Y)")->required();
  curve->add_flag("--hat", hat_mode, "use the squared-correlation budget");

  CLI::App* gaussian = app.add_subcommand("gaussian", "closed-form Gaussian trade-off");
  add_common(gaussian, false);
  gaussian->add_option("--rho2", rho2, "squared correlation")->required();
  gaussian->add_option("--var-y", var_y, "variance of Y");
  auto* gauss_eps = gaussian->add_option("--eps", eps, "leakage budget, bits");
  gaussian->add_option("--grid", grid_spec, "a:b:n, I = I(X;Y)");

  CLI::App* quantized = app.add_subcommand(
      "quantized", "quantized additive-noise family and its convergence");
  add_common(quantized, false);
  quantized->add_option("--rho2", rho2, "squared correlation")->required();
  quantized->add_option("--var-y", var_y, "variance of Y");
  quantized->add_option("--eps", eps, "leakage budget, bits")->required();
  quantized->add_option("--M", m_list, "quantizer accuracies, ascending");

  CLI::App* filter = app.add_subcommand("filter", "solve one point and emit the certificate");
  add_common(filter, true);
  filter->add_option("--eps", eps, "leakage budget")->required();
  filter->add_flag("--hat", hat_mode, "use the squared-correlation budget");

  CLI::App* funnel = app.add_subcommand("funnel", "minimal leakage for a target rate");
  add_common(funnel, true);
  funnel->add_option("--rate", rate, "target extraction, bits")->required();

  CLI::App* dilution = app.add_subcommand("dilution", "outer bound on masking vs amplification");
  add_common(dilution, true);
  dilution->add_option("--delta-a", rate, "amplification, bits")->required();

  CLI::App* verify = app.add_subcommand("verify", "run the property suite");
  add_common(verify, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(opts);
    if (curve->parsed()) return cmd_curve(opts, grid_spec, hat_mode, command);
    if (gaussian->parsed())
      return cmd_gaussian(opts, rho2, var_y,
                          gauss_eps->count() ? std::optional<double>(eps)
                                             : std::nullopt,
                          grid_spec, command);
    if (quantized->parsed())
      return cmd_quantized(opts, rho2, var_y, eps, m_list, command);
    if (filter->parsed()) return cmd_filter(opts, eps, hat_mode, command);
    if (funnel->parsed()) return cmd_funnel(opts, rate, false);
    if (dilution->parsed()) return cmd_funnel(opts, rate, true);
    if (verify->parsed()) return cmd_verify(opts);
  } catch (const privex::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
