// Command-line front end: state inspection, figure-data CSV generation, and
// the invariant suite. Exit codes: 0 success, 1 verification failure,
// 2 user/config error, 3 internal invariant violation.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qdistill/protocol.hpp"
#include "qdistill/verify.hpp"

using namespace qdistill;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct InternalInvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Full round-trip precision for every numeric CSV field.
std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string brief(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

/// Comment-header manifest embedded in every CSV so the file is
/// self-describing and re-runnable.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> entries;

  void add(const std::string& key, const std::string& value) { entries.emplace_back(key, value); }
  void add(const std::string& key, double value) { entries.emplace_back(key, full(value)); }

  void write(std::ostream& os) const {
    os << "# qdistill " << command << "\n";
    os << "# version = " << QDISTILL_VERSION << "\n";
    for (const auto& [k, v] : entries) os << "# " << k << " = " << v << "\n";
  }
};

struct OutputTarget {
  std::string path;  // empty = stdout
  std::ofstream file;

  std::ostream& open() {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open output file: " + path);
    return file;
  }
};

StateSpec parse_state(const std::string& family, std::optional<double> a, std::optional<double> b) {
  if (family == "chi1") {
    if (a || b) throw std::domain_error("chi1 takes no parameter");
    return {StateSpec::Family::Chi1, 0.0};
  }
  if (family == "chi2") {
    if (!a) throw std::domain_error("chi2 requires --a in [0,1]");
    return {StateSpec::Family::Chi2, *a};
  }
  if (family == "chi3") {
    if (!b) throw std::domain_error("chi3 requires --b in [2,5]");
    return {StateSpec::Family::Chi3, *b};
  }
  throw std::domain_error("unknown state '" + family + "' (expected chi1, chi2, or chi3)");
}

std::vector<OutcomePair> parse_outcomes(const std::string& spec) {
  std::vector<OutcomePair> out;
  if (spec == "all") {
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j) out.push_back({i, j});
    return out;
  }
  if (spec == "diag") {
    for (int i = 1; i <= 3; ++i) out.push_back({i, i});
    return out;
  }
  std::stringstream ss(spec);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    int i = 0, j = 0;
    char comma = 0;
    std::stringstream ps(pair);
    if (!(ps >> i >> comma >> j) || comma != ',' || i < 1 || i > 3 || j < 1 || j > 3)
      throw std::domain_error("bad --outcomes entry '" + pair +
                              "' (expected all, diag, or i,j pairs like 1,3;2,2)");
    out.push_back({i, j});
  }
  if (out.empty()) throw std::domain_error("empty --outcomes selection");
  return out;
}

void warn_if_degenerate(const MeasurementParams& params) {
  if (params.degenerate_beta())
    std::cerr << "note: beta = 1/2 is degenerate (the M1 outcome induces no "
                 "entanglement toward the unmeasured party)\n";
}

// ---------------------------------------------------------------------------

int cmd_state(const std::string& family, std::optional<double> a, std::optional<double> b) {
  const StateSpec spec = parse_state(family, a, b);
  const DensityMatrix rho = spec.build();
  const auto cls = spec.classification();
  const auto eig = hermitian_eigenvalues(rho.matrix);
  const BipartitionSpec cut{{kLabelA}, {kLabelB}};

  std::cout << "state: " << spec.name();
  if (spec.family == StateSpec::Family::Chi2) std::cout << " (a = " << brief(spec.param) << ")";
  if (spec.family == StateSpec::Family::Chi3) std::cout << " (b = " << brief(spec.param) << ")";
  std::cout << "\n";
  std::cout << "classification: " << to_string(cls.cls)
            << (cls.boundary ? " (boundary value)" : "") << "\n";
  std::cout << "trace: " << full(rho.matrix.trace().real()) << "\n";
  std::cout << "rank: " << rho.rank() << "\n";
  std::cout << "eigenvalue range: [" << full(eig.front()) << ", " << full(eig.back()) << "]\n";
  std::cout << "negativity (A|B): " << full(negativity(rho, cut)) << "\n";
  std::cout << "ppt (A|B): " << (is_ppt(rho, cut) ? "yes" : "no") << "\n";
  std::cout << "realignment witness: " << full(realignment_witness(rho))
            << "  (positive certifies entanglement)\n";
  return 0;
}

int cmd_weakness(std::vector<double> betas, std::size_t grid_points, OutputTarget& target) {
  if (betas.empty()) betas = {0.1, 0.2, 0.3, 0.4};
  const auto grid = uniform_grid(0.0, 1.0, grid_points);
  std::vector<std::vector<std::pair<double, double>>> profiles;
  for (double beta : betas) profiles.push_back(weakness_profile(beta, grid));

  RunManifest manifest;
  manifest.command = "weakness";
  std::string blist;
  for (double beta : betas) blist += (blist.empty() ? "" : ",") + std::string(brief(beta));
  manifest.add("beta", blist);
  manifest.add("grid", std::to_string(grid_points));
  manifest.add("out", target.path.empty() ? "-" : target.path);

  std::ostream& os = target.open();
  manifest.write(os);
  os << "x";
  for (double beta : betas) os << ",zeta_beta" << brief(beta);
  os << "\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    os << full(grid[k]);
    for (const auto& prof : profiles) os << "," << full(prof[k].second);
    os << "\n";
  }
  return 0;
}

void add_state_manifest(RunManifest& manifest, const StateSpec& spec) {
  manifest.add("state", spec.name());
  if (spec.family == StateSpec::Family::Chi2) manifest.add("a", spec.param);
  if (spec.family == StateSpec::Family::Chi3) manifest.add("b", spec.param);
}

int cmd_sweep(const StateSpec& spec, double alpha, double beta, std::size_t grid_points,
              std::optional<double> single_x, const std::string& outcomes_spec,
              OutputTarget& target) {
  const auto outcomes = parse_outcomes(outcomes_spec);
  ScenarioConfig config;
  config.state = spec;
  config.params = {0.0, beta, alpha};
  config.x_grid = single_x ? std::vector<double>{*single_x} : uniform_grid(0.0, 1.0, grid_points);
  config.with_costs = false;
  config.with_tripartite = false;
  warn_if_degenerate(config.params);

  const auto result = sweep(config);

  RunManifest manifest;
  manifest.command = "sweep";
  add_state_manifest(manifest, spec);
  manifest.add("alpha", alpha);
  manifest.add("beta", beta);
  if (single_x)
    manifest.add("x", *single_x);
  else
    manifest.add("grid", std::to_string(grid_points));
  manifest.add("outcomes", outcomes_spec);
  manifest.add("out", target.path.empty() ? "-" : target.path);

  std::ostream& os = target.open();
  manifest.write(os);
  os << "x,zeta";
  for (const auto& o : outcomes)
    os << ",p_i" << o.bob << "_j" << o.alice << ",N_AB_i" << o.bob << "_j" << o.alice;
  os << ",N_AB_avg\n";

  for (const auto& row : result.rows) {
    double prob_sum = 0.0;
    for (const auto& br : row.branches) prob_sum += br.record.joint_probability;
    if (std::abs(prob_sum - 1.0) > 1e-10)
      throw InternalInvariantError("branch probabilities sum to " + full(prob_sum) + " at x = " +
                                   full(row.x));
    os << full(row.x) << "," << full(row.zeta);
    for (const auto& o : outcomes) {
      const auto& br = row.branches[static_cast<std::size_t>(3 * (o.bob - 1) + (o.alice - 1))];
      os << "," << full(br.record.joint_probability) << ",";
      // Null branches keep the probability column but leave the negativity
      // field empty: "never occurs" is not "no entanglement".
      if (br.neg_ab) os << full(*br.neg_ab);
    }
    os << "," << full(row.avg_neg_ab) << "\n";
  }
  return 0;
}

int cmd_cost(const StateSpec& spec, double alpha, double beta, std::size_t grid_points,
             std::optional<double> single_x, OutputTarget& target) {
  ScenarioConfig config;
  config.state = spec;
  config.params = {0.0, beta, alpha};
  config.x_grid = single_x ? std::vector<double>{*single_x} : uniform_grid(0.0, 1.0, grid_points);
  warn_if_degenerate(config.params);

  const auto result = sweep(config);

  RunManifest manifest;
  manifest.command = "cost";
  add_state_manifest(manifest, spec);
  manifest.add("alpha", alpha);
  manifest.add("beta", beta);
  if (single_x)
    manifest.add("x", *single_x);
  else
    manifest.add("grid", std::to_string(grid_points));
  manifest.add("out", target.path.empty() ? "-" : target.path);

  std::ostream& os = target.open();
  manifest.write(os);
  os << "x,N_AB_avg,M_cost,E_cost,E_ABC\n";
  for (const auto& row : result.rows) {
    double prob_sum = 0.0;
    for (const auto& br : row.branches) prob_sum += br.record.joint_probability;
    if (std::abs(prob_sum - 1.0) > 1e-10)
      throw InternalInvariantError("branch probabilities sum to " + full(prob_sum) + " at x = " +
                                   full(row.x));
    os << full(row.x) << "," << full(row.cost->avg_negativity_ab) << ","
       << full(row.cost->m_cost) << "," << full(row.cost->e_cost) << ","
       << full(*row.tripartite) << "\n";
  }
  return 0;
}

int cmd_verify(const std::string& inject_fault) {
  FaultInjection fault;
  if (inject_fault == "chi2-sign-flip")
    fault.chi2_sign_flip = true;
  else if (!inject_fault.empty())
    throw std::domain_error("unknown fault '" + inject_fault + "' (expected chi2-sign-flip)");

  const auto results = run_all_checks(fault);
  std::size_t passed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %-44s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    if (r.passed) ++passed;
  }
  std::printf("result: %zu/%zu checks passed\n", passed, results.size());
  return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak-measurement distillation of free entanglement from "
               "qutrit-qutrit bound-entangled states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QDISTILL_VERSION);

  // state
  auto* state_cmd = app.add_subcommand("state", "Inspect an initial state");
  std::string family;
  state_cmd->add_option("family", family, "chi1, chi2, or chi3")->required();
  std::optional<double> a_param, b_param;
  state_cmd->add_option("--a", a_param, "chi2 parameter, in [0,1]");
  state_cmd->add_option("--b", b_param, "chi3 parameter, in [2,5]");
  state_cmd->set_config("--config");

  // weakness
  auto* weakness_cmd = app.add_subcommand("weakness", "Weakness profile zeta(x) as CSV");
  std::vector<double> betas;
  std::size_t weakness_grid = 201;
  OutputTarget weakness_out;
  weakness_cmd->add_option("--beta", betas, "beta values (default 0.1 0.2 0.3 0.4)");
  weakness_cmd->add_option("--grid", weakness_grid, "number of x grid points")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  weakness_cmd->add_option("--out", weakness_out.path, "output CSV path (default stdout)");
  weakness_cmd->set_config("--config");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Per-outcome branch negativities vs x as CSV");
  std::string sweep_family;
  std::optional<double> sweep_a, sweep_b, sweep_x;
  double sweep_alpha = kInvSqrt2, sweep_beta = 0.1;
  std::size_t sweep_grid = 201;
  std::string sweep_outcomes = "all";
  OutputTarget sweep_out;
  sweep_cmd->add_option("family", sweep_family, "chi1, chi2, or chi3")->required();
  sweep_cmd->add_option("--a", sweep_a, "chi2 parameter, in [0,1]");
  sweep_cmd->add_option("--b", sweep_b, "chi3 parameter, in [2,5]");
  sweep_cmd->add_option("--alpha", sweep_alpha, "projector parameter, in (0,1)");
  sweep_cmd->add_option("--beta", sweep_beta, "strength split, in (0,1)");
  sweep_cmd->add_option("--grid", sweep_grid, "number of x grid points")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  sweep_cmd->add_option("--x", sweep_x, "single x instead of a grid");
  sweep_cmd->add_option("--outcomes", sweep_outcomes, "all, diag, or i,j pairs like 1,3;2,2");
  sweep_cmd->add_option("--out", sweep_out.path, "output CSV path (default stdout)");
  sweep_cmd->set_config("--config");

  // cost
  auto* cost_cmd = app.add_subcommand("cost", "Average negativity and cost curves as CSV");
  std::string cost_family;
  std::optional<double> cost_a, cost_b, cost_x;
  double cost_alpha = kInvSqrt2, cost_beta = 0.1;
  std::size_t cost_grid = 201;
  OutputTarget cost_out;
  cost_cmd->add_option("family", cost_family, "chi1, chi2, or chi3")->required();
  cost_cmd->add_option("--a", cost_a, "chi2 parameter, in [0,1]");
  cost_cmd->add_option("--b", cost_b, "chi3 parameter, in [2,5]");
  cost_cmd->add_option("--alpha", cost_alpha, "projector parameter, in (0,1)");
  cost_cmd->add_option("--beta", cost_beta, "strength split, in (0,1)");
  cost_cmd->add_option("--grid", cost_grid, "number of x grid points")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
  cost_cmd->add_option("--x", cost_x, "single x instead of a grid");
  cost_cmd->add_option("--out", cost_out.path, "output CSV path (default stdout)");
  cost_cmd->set_config("--config");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");
  std::string inject_fault;
  verify_cmd->add_option("--inject-fault", inject_fault,
                         "testing hook: corrupt an input to prove the suite catches it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    if (*state_cmd) return cmd_state(family, a_param, b_param);
    if (*weakness_cmd) return cmd_weakness(betas, weakness_grid, weakness_out);
    if (*sweep_cmd)
      return cmd_sweep(parse_state(sweep_family, sweep_a, sweep_b), sweep_alpha, sweep_beta,
                       sweep_grid, sweep_x, sweep_outcomes, sweep_out);
    if (*cost_cmd)
      return cmd_cost(parse_state(cost_family, cost_a, cost_b), cost_alpha, cost_beta, cost_grid,
                      cost_x, cost_out);
    if (*verify_cmd) return cmd_verify(inject_fault);
  } catch (const InternalInvariantError& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
