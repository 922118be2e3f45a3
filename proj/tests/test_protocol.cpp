#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "qdistill/protocol.hpp"
#include "qdistill/verify.hpp"

using namespace qdistill;

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

ScenarioConfig chi1_config() {
  ScenarioConfig cfg;
  cfg.state = {StateSpec::Family::Chi1, 0.0};
  cfg.params = {0.0, 0.1, kInvSqrt2};
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  ScenarioConfig cfg = chi1_config();
  cfg.x_grid = {0.2, 0.1};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.x_grid = {0.1, 1.2};
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
  cfg.x_grid = {};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = chi1_config();
  cfg.outcome_filter = std::vector<OutcomePair>{{4, 1}};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = chi1_config();
  cfg.state = {StateSpec::Family::Chi2, 1.5};
  CHECK_THROWS_AS(cfg.validate(), std::domain_error);
}

TEST_CASE("default grids match the documented resolution") {
  CHECK(default_x_grid().size() == 201);
  CHECK(default_x_grid().front() == 0.0);
  CHECK(default_x_grid().back() == 1.0);
  const auto alphas = default_alpha_grid();
  CHECK(alphas.size() == 99);
  CHECK(alphas.front() == doctest::Approx(0.01));
  CHECK(alphas.back() == doctest::Approx(0.99));
}

TEST_CASE("run_scenario: chi1 weak region yields all-branch free entanglement") {
  const auto row = run_scenario(chi1_config(), 0.2);
  REQUIRE(row.branches.size() == 9);
  for (const auto& br : row.branches) {
    REQUIRE(br.neg_ab.has_value());
    CHECK(*br.neg_ab > 1e-6);
  }
  CHECK(row.zeta == doctest::Approx(weakness(0.2, 0.1)));
  CHECK(row.avg_neg_ab > 0.0);
  REQUIRE(row.cost.has_value());
  CHECK(row.cost->e_cost == row.cost->m_cost - row.cost->avg_negativity_ab);
  REQUIRE(row.tripartite.has_value());
  CHECK(*row.tripartite >= 0.0);
}

TEST_CASE("run_scenario: chi2(1/2) at x = 0.03 has exactly seven NPT branches") {
  ScenarioConfig cfg = chi1_config();
  cfg.state = {StateSpec::Family::Chi2, 0.5};
  const auto row = run_scenario(cfg, 0.03);
  int npt = 0;
  for (const auto& br : row.branches)
    if (br.neg_ab && *br.neg_ab > 0.0) ++npt;
  CHECK(npt == 7);
}

TEST_CASE("run_scenario: separable chi3(2) still yields a normalized ensemble") {
  ScenarioConfig cfg = chi1_config();
  cfg.state = {StateSpec::Family::Chi3, 2.0};
  const auto row = run_scenario(cfg, 0.03);
  double sum = 0.0;
  int measurement_induced = 0;
  for (const auto& br : row.branches) {
    sum += br.record.joint_probability;
    if (br.neg_ab && *br.neg_ab > 1e-9) ++measurement_induced;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  // Some branches do pick up measurement-induced entanglement; recorded,
  // not pinned to a particular pattern.
  CHECK(measurement_induced > 0);
}

TEST_CASE("sweep is deterministic and echoes its grid") {
  ScenarioConfig cfg = chi1_config();
  cfg.x_grid = uniform_grid(0.0, 1.0, 11);
  cfg.with_bipartition_scan = false;
  const auto s1 = sweep(cfg);
  const auto s2 = sweep(cfg);
  REQUIRE(s1.rows.size() == 11);
  for (std::size_t k = 0; k < 11; ++k) {
    CHECK(s1.rows[k].x == cfg.x_grid[k]);
    CHECK(s1.rows[k].avg_neg_ab == s2.rows[k].avg_neg_ab);  // bitwise
    CHECK(s1.rows[k].cost->m_cost == s2.rows[k].cost->m_cost);
    double sum = 0.0;
    for (const auto& br : s1.rows[k].branches) sum += br.record.joint_probability;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("outcome filter trims the reported branches") {
  ScenarioConfig cfg = chi1_config();
  cfg.outcome_filter = std::vector<OutcomePair>{{1, 1}, {2, 2}, {3, 3}};
  const auto row = run_scenario(cfg, 0.3);
  REQUIRE(row.branches.size() == 3);
  for (const auto& br : row.branches)
    CHECK(br.record.bob_outcome == br.record.alice_outcome);
  // The averaged quantities still use the full ensemble.
  CHECK(row.avg_neg_ab > 0.0);
}

TEST_CASE("chi3 universality: every b in [2,4] activates somewhere") {
  for (double b : {2.0, 2.5, 3.0, 3.5, 4.0}) {
    ScenarioConfig cfg = chi1_config();
    cfg.state = {StateSpec::Family::Chi3, b};
    cfg.with_costs = false;
    cfg.with_tripartite = false;
    bool found = false;
    for (double x : uniform_grid(0.0, 1.0, 21)) {
      const auto row = run_scenario(cfg, x);
      for (const auto& br : row.branches)
        if (br.neg_ab && *br.neg_ab > 1e-6) {
          found = true;
          break;
        }
      if (found) break;
    }
    CHECK(found);
  }
}

TEST_CASE("chi2 argmax branch is (bob=1, alice=3) away from small a") {
  for (double a : {0.25, 0.5, 0.75, 1.0}) {
    ScenarioConfig cfg = chi1_config();
    cfg.state = {StateSpec::Family::Chi2, a};
    cfg.with_costs = false;
    cfg.with_tripartite = false;
    double best = -1.0;
    OutcomePair best_pair{0, 0};
    for (double x : uniform_grid(0.01, 0.99, 50)) {
      const auto row = run_scenario(cfg, x);
      for (const auto& br : row.branches)
        if (br.neg_ab && *br.neg_ab > best) {
          best = *br.neg_ab;
          best_pair = {br.record.bob_outcome, br.record.alice_outcome};
        }
    }
    CHECK(best_pair.bob == 1);
    CHECK(best_pair.alice == 3);
  }
}

TEST_CASE("fig-4 style run: three distinct same-outcome curves at alpha = 1/100") {
  ScenarioConfig cfg = chi1_config();
  cfg.params.alpha = 0.01;
  cfg.with_costs = false;
  cfg.with_tripartite = false;
  cfg.outcome_filter = std::vector<OutcomePair>{{1, 1}, {2, 2}, {3, 3}};
  std::array<double, 3> gap{};  // max pointwise gap between curve pairs
  for (double x : uniform_grid(0.05, 0.95, 19)) {
    const auto row = run_scenario(cfg, x);
    REQUIRE(row.branches.size() == 3);
    std::array<double, 3> v{};
    for (std::size_t k = 0; k < 3; ++k) v[k] = row.branches[k].neg_ab.value_or(0.0);
    gap[0] = std::max(gap[0], std::abs(v[0] - v[1]));
    gap[1] = std::max(gap[1], std::abs(v[0] - v[2]));
    gap[2] = std::max(gap[2], std::abs(v[1] - v[2]));
  }
  for (double g : gap) CHECK(g > 1e-5);
}

TEST_CASE("alpha scan recovers the off-balance optimum for (bob=3, alice=2)") {
  // Coarse grids keep this test quick; the acceptance suite runs the full
  // 99x201 version.
  const auto xs = uniform_grid(0.0, 1.0, 41);
  std::vector<double> alphas;
  for (int k = 1; k <= 24; ++k) alphas.push_back(k / 25.0);
  const auto scan =
      alpha_scan({StateSpec::Family::Chi1, 0.0}, OutcomePair{3, 2}, xs, alphas, 0.1);
  CHECK(scan.argmax_alpha > 0.40);
  CHECK(scan.argmax_alpha < 0.56);
  CHECK(scan.max_value > 0.01);
  REQUIRE(scan.points.size() == alphas.size());
}

TEST_CASE("alpha scan with a single x reproduces the fixed-x profile") {
  const auto scan = alpha_scan({StateSpec::Family::Chi1, 0.0}, OutcomePair{1, 1}, {0.2},
                               {0.3, kInvSqrt2}, 0.1);
  const MeasurementSet m1 = make_measurement_set({0.2, 0.1, 0.3});
  const auto rec = protocol_branch(make_chi1(), m1, make_ancilla(), 1, 1);
  CHECK(scan.points[0].neg_ab ==
        doctest::Approx(negativity(*rec.state, BipartitionSpec{{kLabelA}, {kLabelB}}))
            .epsilon(1e-12));
  CHECK_THROWS_AS(alpha_scan({StateSpec::Family::Chi1, 0.0}, OutcomePair{1, 1}, {}, {0.5}, 0.1),
                  std::invalid_argument);
}

TEST_CASE("bipartition scan on a product tripartite state") {
  const auto chi = make_chi2(0.0);  // exact product across A|B
  DensityMatrix state(tensor(chi.matrix, make_ancilla().matrix), sig_abc());
  OutcomeRecord rec{1, 1, 1.0, 1.0, std::move(state)};
  const auto cuts = bipartition_scan(rec);
  REQUIRE(cuts.size() == 6);
  for (const auto& cut : cuts) {
    CHECK(cut.ppt);
    CHECK(cut.negativity == 0.0);
    CHECK(cut.verdict != "NPT (free-entangled)");
  }
}

TEST_CASE("bipartition scan flags NPT A|B branches and decides 2x3 cuts") {
  ScenarioConfig cfg = chi1_config();
  cfg.with_bipartition_scan = true;
  const auto row = run_scenario(cfg, 0.2);
  for (const auto& br : row.branches) {
    REQUIRE(br.cuts.size() == 6);
    if (br.neg_ab && *br.neg_ab > 1e-6) {
      CHECK(br.cuts[0].cut_name == "A|B");
      CHECK_FALSE(br.cuts[0].ppt);
      CHECK(br.cuts[0].verdict == "NPT (free-entangled)");
    }
    for (const auto& cut : br.cuts) {
      if (cut.cut_name == "A|C" || cut.cut_name == "B|C") {
        // 2x3 cuts are decided either way: NPT or separable, never bound.
        CHECK((cut.verdict == "NPT (free-entangled)" || cut.verdict == "separable (PPT, 2x3)"));
      }
      if (cut.cut_name == "AB|C" || cut.cut_name == "A|BC" || cut.cut_name == "B|AC") {
        if (cut.ppt) CHECK(cut.verdict == "PPT (undetermined separability)");
      }
    }
  }
  OutcomeRecord null_rec{1, 1, 0.0, 0.0, std::nullopt};
  CHECK_THROWS_AS(bipartition_scan(null_rec), std::invalid_argument);
}

TEST_CASE("state spec helpers") {
  CHECK(StateSpec{StateSpec::Family::Chi1, 0.0}.name() == "chi1");
  CHECK(StateSpec{StateSpec::Family::Chi2, 0.5}.name() == "chi2");
  CHECK(StateSpec{StateSpec::Family::Chi3, 4.5}.classification().cls ==
        EntanglementClass::Free);
  CHECK(StateSpec{StateSpec::Family::Chi1, 0.0}.build().dim() == 9);
}

TEST_CASE("verify suite passes clean and catches an injected fault") {
  const auto clean = run_all_checks();
  CHECK(clean.size() >= 20);
  for (const auto& r : clean) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.passed);
  }
  CHECK(all_passed(clean));

  FaultInjection fault;
  fault.chi2_sign_flip = true;
  const auto broken = run_all_checks(fault);
  CHECK_FALSE(all_passed(broken));
  bool named = false;
  for (const auto& r : broken)
    if (!r.passed && r.name == "states/chi2-entry-pins") named = true;
  CHECK(named);
}
