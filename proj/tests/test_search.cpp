#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "enum_oracle.hpp"
#include "fixtures.hpp"
#include "tfr/instance_io.hpp"
#include "tfr/search.hpp"
#include "tfr/simulate.hpp"

using namespace tfr;

namespace {

Instance single_task_instance() {
  Instance inst = fixtures::example2_instance();
  inst.tasks.resize(1);
  inst.finalize();
  return inst;
}

void check_incumbent_invariants(const Instance& inst, const SolveResult& res) {
  REQUIRE(res.incumbent.has_value());
  const Solution& s = *res.incumbent;
  // per-route chance constraints and hard caps
  std::vector<int> covered(inst.n_tasks(), 0);
  for (const auto& c : s.columns) {
    CHECK(check_route_feasibility(c, inst, inst.alpha));
    for (int t : c.route) ++covered[t];
  }
  for (int i = 0; i < inst.n_tasks(); ++i) CHECK(covered[i] >= 1);
  // workforce rows at every time under the gamma scenario
  for (int k = 0; k < inst.skill_levels; ++k)
    for (int tau = 0; tau <= inst.time_ub(); ++tau) {
      int agg = 0;
      for (const auto& c : s.columns)
        agg += c.occupancy_cumulative(inst, k, tau);
      CHECK(agg <= inst.workforce.cumulative(k));
    }
  // flows certify disaggregated feasibility
  auto fc = feasibility_check(s.columns, inst);
  CHECK(fc.feasible);
  CHECK(flows_satisfy_check(s.columns, inst, s.flows));
  // reported objective equals the in-model evaluation of the columns
  double obj = 0.0;
  for (const auto& c : s.columns) obj += route_cost(c, inst);
  CHECK(obj == doctest::Approx(s.objective).epsilon(1e-9));
}

}  // namespace

TEST_CASE("single task instance solves at the root") {
  Instance inst = single_task_instance();
  SolveResult res = solve(inst);
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(res.stats.nodes_explored == 1);
  REQUIRE(res.incumbent.has_value());
  CHECK(res.incumbent->columns.size() == 1);
  CHECK(res.incumbent->columns[0].route == std::vector<int>{0});
  // optimum: leave early enough that the task starts at ES in every case
  auto oracle = enum_oracle::oracle_optimum(inst);
  REQUIRE(oracle.feasible);
  CHECK(res.incumbent->objective == doctest::Approx(oracle.objective));
  check_incumbent_invariants(inst, res);
}

TEST_CASE("instance with an integral relaxation needs no branching") {
  Instance inst = fixtures::example2_instance();
  SolveResult res = solve(inst);
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(res.stats.nodes_explored == 1);
  check_incumbent_invariants(inst, res);
}

TEST_CASE("an instance without workers is reported infeasible") {
  Instance inst = fixtures::example2_instance();
  inst.workforce.available = {0};
  SolveResult res = solve(inst);
  CHECK(res.status == SolveStatus::Infeasible);
  CHECK_FALSE(res.incumbent.has_value());
}

TEST_CASE("solver matches the exhaustive oracle across feature configs") {
  Rng rng(41);
  int compared = 0;
  for (int it = 0; it < 14; ++it) {
    fixtures::SmallParams params;
    params.n_tasks = 4;
    Instance inst = fixtures::random_small_instance(rng, params);
    auto oracle = enum_oracle::oracle_optimum(inst);
    for (FeatureConfig fc :
         {FeatureConfig::Full, FeatureConfig::Basic, FeatureConfig::NoCgc,
          FeatureConfig::NoDrmp, FeatureConfig::NoBranching}) {
      SolveConfig cfg;
      cfg.features = fc;
      cfg.time_limit = 60.0;
      SolveResult res = solve(inst, cfg);
      if (!oracle.feasible) {
        CHECK(res.status == SolveStatus::Infeasible);
        continue;
      }
      REQUIRE(res.status == SolveStatus::Optimal);
      CHECK(res.incumbent->objective ==
            doctest::Approx(oracle.objective).epsilon(1e-6));
      CHECK(res.stats.bound_violations == 0);
      check_incumbent_invariants(inst, res);
      ++compared;
    }
  }
  CHECK(compared >= 25);
}

TEST_CASE("forced disaggregated runs agree and certify their solutions") {
  Rng rng(42);
  int compared = 0;
  for (int it = 0; it < 10 && compared < 5; ++it) {
    Instance inst = fixtures::random_small_instance(rng);
    auto oracle = enum_oracle::oracle_optimum(inst);
    SolveConfig cfg;
    cfg.force_disaggregated_root = true;
    cfg.time_limit = 60.0;
    SolveResult res = solve(inst, cfg);
    if (!oracle.feasible) {
      CHECK(res.status == SolveStatus::Infeasible);
      continue;
    }
    REQUIRE(res.status == SolveStatus::Optimal);
    CHECK(res.incumbent->objective ==
          doctest::Approx(oracle.objective).epsilon(1e-6));
    CHECK(res.stats.drmp_nodes > 0);
    // disaggregated solutions carry compositions; both certificates hold
    for (const auto& c : res.incumbent->columns)
      CHECK(c.composition.has_value());
    auto fc2 = feasibility_check(res.incumbent->columns, inst);
    CHECK(fc2.feasible);
    auto flows = construct_dmp_certificate(res.incumbent->columns, inst);
    CHECK(flows_satisfy_check(res.incumbent->columns, inst, flows));
    ++compared;
  }
  CHECK(compared >= 3);
}

TEST_CASE("branching fires on instances with fractional relaxations") {
  Rng rng(43);
  long total_nodes = 0;
  int solved = 0;
  for (int it = 0; it < 12; ++it) {
    fixtures::SmallParams params;
    params.n_tasks = 5;
    Instance inst = fixtures::random_small_instance(rng, params);
    SolveConfig cfg;
    cfg.time_limit = 60.0;
    SolveResult res = solve(inst, cfg);
    if (res.status == SolveStatus::Optimal) {
      ++solved;
      total_nodes += res.stats.nodes_explored;
      CHECK(res.stats.bound_violations == 0);
    }
  }
  CHECK(solved >= 6);
  CHECK(total_nodes >= solved);  // at least the roots
}

TEST_CASE("early termination produces a bound-consistent incumbent") {
  Rng rng(44);
  fixtures::SmallParams params;
  params.n_tasks = 6;
  for (int it = 0; it < 6; ++it) {
    Instance inst = fixtures::random_small_instance(rng, params);
    SolveConfig tight;
    tight.time_limit = 0.05;  // force the heuristic path
    SolveResult res = solve(inst, tight);
    if (res.status != SolveStatus::TimeLimit) continue;
    if (res.incumbent)
      CHECK(res.incumbent->objective >= res.lower_bound - 1e-6);
  }
}

TEST_CASE("identical runs produce identical outputs") {
  Rng rng(45);
  Instance inst = fixtures::random_small_instance(rng);
  SolveConfig cfg;
  SolveResult a = solve(inst, cfg);
  SolveResult b = solve(inst, cfg);
  CHECK(solution_to_json(a, inst) == solution_to_json(b, inst));
  CHECK(a.stats.nodes_explored == b.stats.nodes_explored);
  CHECK(a.stats.columns_generated == b.stats.columns_generated);
}

TEST_CASE("gamma override flows through the solve") {
  Rng rng(46);
  Instance inst = fixtures::random_small_instance(rng);
  SolveConfig g1;
  g1.gamma = 0.5;
  SolveConfig g2;
  g2.gamma = 1.0;
  SolveResult r1 = solve(inst, g1);
  SolveResult r2 = solve(inst, g2);
  // a smaller gamma frees workers earlier; if both are feasible the optimum
  // can only improve
  if (r1.status == SolveStatus::Optimal && r2.status == SolveStatus::Optimal)
    CHECK(r1.incumbent->objective <= r2.incumbent->objective + 1e-6);
}
