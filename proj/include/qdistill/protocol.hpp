#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdistill/measures.hpp"

namespace qdistill {

/// Which initial state a run uses. The parameter is a for Chi2, b for Chi3,
/// ignored for Chi1.
struct StateSpec {
  enum class Family { Chi1, Chi2, Chi3 };

  Family family = Family::Chi1;
  double param = 0.0;

  DensityMatrix build() const;
  StateClassification classification() const;
  std::string name() const;  // "chi1", "chi2", "chi3"
};

struct OutcomePair {
  int bob;
  int alice;
};

/// Uniform grid helpers: n points on [lo,hi] endpoints included.
std::vector<double> uniform_grid(double lo, double hi, std::size_t n);
/// 201 points on [0,1].
std::vector<double> default_x_grid();
/// 99 interior points k/100, k = 1..99.
std::vector<double> default_alpha_grid();

struct ScenarioConfig {
  StateSpec state;
  MeasurementParams params{0.0};  // x is taken from the grid / call site
  std::vector<double> x_grid = default_x_grid();
  std::optional<std::vector<OutcomePair>> outcome_filter;  // nullopt = all nine
  bool with_costs = true;
  bool with_tripartite = true;
  bool with_bipartition_scan = false;

  void validate() const;
};

/// One cut of a bipartition scan. PPT 2x3 cuts are decided (separable);
/// larger PPT cuts stay undetermined.
struct CutReport {
  std::string cut_name;  // e.g. "A|B", "AB|C"
  double negativity;
  bool ppt;
  std::string verdict;
};

std::vector<CutReport> bipartition_scan(const OutcomeRecord& record);

struct BranchResult {
  OutcomeRecord record;
  std::optional<double> neg_ab;  // absent on null branches
  std::vector<CutReport> cuts;   // filled when the scan is requested
};

struct ScenarioRecord {
  double x;
  double zeta;
  std::vector<BranchResult> branches;  // ordered (i,j) row-major, filtered
  double avg_neg_ab;
  std::optional<CostBreakdown> cost;
  std::optional<double> tripartite;
};

ScenarioRecord run_scenario(const ScenarioConfig& config, double x);

struct SweepResult {
  ScenarioConfig config;
  std::vector<ScenarioRecord> rows;
};

SweepResult sweep(const ScenarioConfig& config);

struct AlphaScanPoint {
  double alpha;
  double neg_ab;  // max over the supplied x values
};

struct AlphaScanResult {
  OutcomePair outcome;
  std::vector<AlphaScanPoint> points;
  double argmax_alpha;
  double max_value;
};

/// Branch negativity for one outcome pair, maximized over `x_values`, per
/// alpha. A single-element x list gives the fixed-x profile.
AlphaScanResult alpha_scan(const StateSpec& state, OutcomePair outcome,
                           const std::vector<double>& x_values,
                           const std::vector<double>& alpha_grid, double beta = 0.1);

}  // namespace qdistill
