#include "qdistill/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qdistill {

DensityMatrix StateSpec::build() const {
  switch (family) {
    case Family::Chi1: return make_chi1();
    case Family::Chi2: return make_chi2(param);
    case Family::Chi3: return make_chi3(param);
  }
  throw std::logic_error("StateSpec: unknown family");
}

StateClassification StateSpec::classification() const {
  switch (family) {
    case Family::Chi1: return classify_chi1();
    case Family::Chi2: return classify_chi2(param);
    case Family::Chi3: return classify_chi3(param);
  }
  throw std::logic_error("StateSpec: unknown family");
}

std::string StateSpec::name() const {
  switch (family) {
    case Family::Chi1: return "chi1";
    case Family::Chi2: return "chi2";
    case Family::Chi3: return "chi3";
  }
  return "?";
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
  if (n < 2) throw std::invalid_argument("uniform_grid: need at least two points");
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k)
    g[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  return g;
}

std::vector<double> default_x_grid() { return uniform_grid(0.0, 1.0, 201); }

std::vector<double> default_alpha_grid() {
  std::vector<double> g(99);
  for (std::size_t k = 0; k < 99; ++k) g[k] = static_cast<double>(k + 1) / 100.0;
  return g;
}

void ScenarioConfig::validate() const {
  if (x_grid.empty()) throw std::invalid_argument("ScenarioConfig: empty x grid");
  double prev = -1.0;
  for (double x : x_grid) {
    if (!(x >= 0.0 && x <= 1.0))
      throw std::domain_error("ScenarioConfig: x grid values must lie in [0,1]");
    if (x <= prev) throw std::invalid_argument("ScenarioConfig: x grid must be strictly increasing");
    prev = x;
  }
  if (outcome_filter) {
    if (outcome_filter->empty())
      throw std::invalid_argument("ScenarioConfig: empty outcome filter");
    for (const auto& o : *outcome_filter)
      if (o.bob < 1 || o.bob > 3 || o.alice < 1 || o.alice > 3)
        throw std::invalid_argument("ScenarioConfig: outcome indices must lie in 1..3");
  }
  StateSpec probe = state;
  probe.classification();  // validates the family parameter range
  MeasurementParams p = params;
  p.x = x_grid.front();
  p.validate();
}

namespace {

bool cut_is_decided_by_ppt(std::size_t d1, std::size_t d2) {
  // 2x2 and 2x3 are the only dimensions where PPT implies separability.
  const auto lo = std::min(d1, d2);
  const auto hi = std::max(d1, d2);
  return lo == 2 && hi <= 3;
}

CutReport make_cut_report(const DensityMatrix& state, std::string name,
                          const BipartitionSpec& cut) {
  std::size_t p1 = 1, p2 = 1;
  for (const auto& l : cut.side_one) p1 *= state.sig.dim_of(l);
  for (const auto& l : cut.side_two) p2 *= state.sig.dim_of(l);

  const double neg = negativity(state, cut);
  const bool ppt = is_ppt(state, cut);
  std::string verdict;
  if (!ppt)
    verdict = "NPT (free-entangled)";
  else if (cut_is_decided_by_ppt(p1, p2))
    verdict = "separable (PPT, 2x3)";
  else
    verdict = "PPT (undetermined separability)";
  return {std::move(name), neg, ppt, std::move(verdict)};
}

}  // namespace

std::vector<CutReport> bipartition_scan(const OutcomeRecord& record) {
  if (record.null_branch())
    throw std::invalid_argument("bipartition_scan: null branch has no state");
  const DensityMatrix& st = *record.state;
  std::vector<CutReport> out;
  out.push_back(make_cut_report(st, "A|B", {{kLabelA}, {kLabelB}}));
  out.push_back(make_cut_report(st, "A|C", {{kLabelA}, {kLabelC}}));
  out.push_back(make_cut_report(st, "B|C", {{kLabelB}, {kLabelC}}));
  out.push_back(make_cut_report(st, "AB|C", {{kLabelA, kLabelB}, {kLabelC}}));
  out.push_back(make_cut_report(st, "A|BC", {{kLabelA}, {kLabelB, kLabelC}}));
  out.push_back(make_cut_report(st, "B|AC", {{kLabelB}, {kLabelA, kLabelC}}));
  return out;
}

ScenarioRecord run_scenario(const ScenarioConfig& config, double x) {
  config.validate();
  MeasurementParams params = config.params;
  params.x = x;
  const MeasurementSet mset = make_measurement_set(params);
  const DensityMatrix chi = config.state.build();
  const DensityMatrix ancilla = make_ancilla();
  const auto records = apply_protocol(chi, mset, ancilla);

  const BipartitionSpec ab_cut{{kLabelA}, {kLabelB}};

  ScenarioRecord row;
  row.x = x;
  row.zeta = mset.zeta;
  row.avg_neg_ab = average_negativity(records, ab_cut);

  for (const auto& rec : records) {
    if (config.outcome_filter) {
      const bool keep = std::any_of(
          config.outcome_filter->begin(), config.outcome_filter->end(),
          [&](const OutcomePair& o) { return o.bob == rec.bob_outcome && o.alice == rec.alice_outcome; });
      if (!keep) continue;
    }
    BranchResult br{rec, std::nullopt, {}};
    if (!rec.null_branch()) {
      br.neg_ab = negativity(*rec.state, ab_cut);
      if (config.with_bipartition_scan) br.cuts = bipartition_scan(rec);
    }
    row.branches.push_back(std::move(br));
  }

  if (config.with_costs) row.cost = measurement_cost(chi, mset, ancilla);
  if (config.with_tripartite) row.tripartite = tripartite_entanglement(records);
  return row;
}

SweepResult sweep(const ScenarioConfig& config) {
  config.validate();
  SweepResult out{config, {}};
  out.rows.reserve(config.x_grid.size());
  for (double x : config.x_grid) out.rows.push_back(run_scenario(config, x));
  return out;
}

AlphaScanResult alpha_scan(const StateSpec& state, OutcomePair outcome,
                           const std::vector<double>& x_values,
                           const std::vector<double>& alpha_grid, double beta) {
  if (x_values.empty() || alpha_grid.empty())
    throw std::invalid_argument("alpha_scan: empty grid");
  if (outcome.bob < 1 || outcome.bob > 3 || outcome.alice < 1 || outcome.alice > 3)
    throw std::invalid_argument("alpha_scan: outcomes must lie in 1..3");

  const DensityMatrix chi = state.build();
  const DensityMatrix ancilla = make_ancilla();
  const DimSignature sig = sig_abc();
  const ComplexMatrix rho0 = tensor(chi.matrix, ancilla.matrix);
  const BipartitionSpec ab_cut{{kLabelA}, {kLabelB}};

  AlphaScanResult result{outcome, {}, 0.0, -1.0};
  for (double alpha : alpha_grid) {
    // Embed the projectors once per alpha; the operators are just epsilon
    // combinations of them, so the x loop stays cheap.
    const auto proj = make_projectors(alpha);
    std::array<ComplexMatrix, 3> pb, pa;
    for (std::size_t k = 0; k < 3; ++k) {
      pb[k] = embed_operator(proj[k], {kLabelB, kLabelC}, sig);
      pa[k] = embed_operator(proj[k], {kLabelA, kLabelC}, sig);
    }
    double best = 0.0;
    for (double x : x_values) {
      MeasurementParams mp{x, beta, alpha};
      mp.validate();
      const auto eps = mp.epsilons();
      ComplexMatrix mb(18, 18), ma(18, 18);
      for (std::size_t j = 0; j < 3; ++j) {
        mb += eps[(static_cast<std::size_t>(outcome.bob) - 1 + j) % 3] * pb[j];
        ma += eps[(static_cast<std::size_t>(outcome.alice) - 1 + j) % 3] * pa[j];
      }
      ComplexMatrix num = ma * (mb * rho0 * mb) * ma;
      const double p = num.trace().real();
      if (p <= kNullBranchThreshold) continue;
      num *= 1.0 / p;
      DensityMatrix reduced(partial_trace(num, sig, {kLabelC}), sig_ab());
      best = std::max(best, negativity(reduced, ab_cut));
    }
    result.points.push_back({alpha, best});
    if (best > result.max_value) {
      result.max_value = best;
      result.argmax_alpha = alpha;
    }
  }
  return result;
}

}  // namespace qdistill
