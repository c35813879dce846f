#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "enum_oracle.hpp"
#include "fixtures.hpp"
#include "tfr/cuts.hpp"
#include "tfr/master.hpp"

using namespace tfr;

namespace {

Instance three_task_instance() {
  Instance inst = fixtures::example2_instance();
  // widen windows so every pair route is feasible
  for (auto& t : inst.tasks) {
    t.es = 0;
    t.lf = 20;
    t.lf_e = 22;
  }
  inst.bins.horizon = 24;
  inst.bins.bin_length = 6;
  int n = inst.n_locations;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      auto& v = inst.edges.travel[a * n + b];
      while (static_cast<int>(v.size()) < inst.bins.count())
        v.push_back(v.back());
    }
  inst.edges.n_bins = inst.bins.count();
  inst.finalize();
  return inst;
}

}  // namespace

TEST_CASE("no violated cut at an integer point") {
  Instance inst = three_task_instance();
  auto c0 = build_column(inst, {0}, 0, 0);
  auto c1 = build_column(inst, {1}, 0, 0);
  auto c2 = build_column(inst, {2}, 0, 0);
  REQUIRE(c0);
  REQUIRE(c1);
  REQUIRE(c2);
  std::vector<const Column*> cols = {&*c0, &*c1, &*c2};
  std::vector<double> lambda = {1.0, 1.0, 1.0};
  auto cut = separate_cgc(inst, cols, lambda, {});
  CHECK_FALSE(cut.has_value());
}

TEST_CASE("half-integral odd-cycle point yields the half-multiplier cut") {
  Instance inst = three_task_instance();
  auto c01 = build_column(inst, {0, 1}, 0, 0);
  auto c12 = build_column(inst, {1, 2}, 0, 0);
  auto c02 = build_column(inst, {0, 2}, 0, 0);
  REQUIRE(c01);
  REQUIRE(c12);
  REQUIRE(c02);
  std::vector<const Column*> cols = {&*c01, &*c12, &*c02};
  std::vector<double> lambda = {0.5, 0.5, 0.5};

  // derived oracle: enumerate u over {0, 1/2}^3 with no workforce rows
  double best = 0.0;
  for (int mask = 0; mask < 8; ++mask) {
    double lhs = 0.0, rhs = 0.0;
    for (int c = 0; c < 3; ++c) {
      double act = 0.0;
      for (int t : cols[c]->route) act += (mask >> t & 1) ? 0.5 : 0.0;
      lhs += lambda[c] * std::floor(act + 1e-9);
    }
    for (int t = 0; t < 3; ++t) rhs += (mask >> t & 1) ? 0.5 : 0.0;
    best = std::max(best, lhs - std::floor(rhs + 1e-9));
  }
  CHECK(best == doctest::Approx(0.5));

  auto cut = separate_cgc(inst, cols, lambda, {});
  REQUIRE(cut.has_value());
  double lhs = 0.0;
  for (int c = 0; c < 3; ++c)
    lhs += lambda[c] * cut->coefficient_for(*cols[c], inst);
  CHECK(lhs - cut->rhs >= 0.5 - 1e-6);
}

TEST_CASE("coefficient evaluation follows the floor formula") {
  Instance inst = three_task_instance();
  auto pair = build_column(inst, {0, 1}, 0, 0);
  REQUIRE(pair);

  ChvatalGomoryCut zero;
  zero.u_task.assign(3, 0.0);
  CHECK(zero.coefficient_for(*pair, inst) == 0);

  ChvatalGomoryCut near_one;
  near_one.u_task = {1.0 - 1e-3, 1.0 - 1e-3, 0.0};
  CHECK(near_one.coefficient_for(*pair, inst) == 1);  // floor(2 - eps)

  Rng rng(7);
  for (int it = 0; it < 100; ++it) {
    ChvatalGomoryCut c;
    c.u_task.assign(3, 0.0);
    for (auto& u : c.u_task) u = rng.uniform_real() * 0.98;
    c.u_work.assign(inst.skill_levels,
                    std::vector<double>(inst.time_ub() + 1, 0.0));
    for (int k = 0; k < inst.skill_levels; ++k)
      for (int tau = 0; tau <= inst.time_ub(); ++tau)
        if (rng.uniform_int(0, 4) == 0)
          c.u_work[k][tau] = rng.uniform_real() * 0.98;
    double act = 0.0;
    for (int t : pair->route) act += c.u_task[t];
    for (int k = 0; k < inst.skill_levels; ++k)
      for (int tau = pair->tl; tau <= pair->tr; ++tau)
        act += c.u_work[k][tau] * inst.profiles[0].xi[k];
    CHECK(c.coefficient_for(*pair, inst) ==
          static_cast<int>(std::floor(act + 1e-9)));
  }
}

TEST_CASE("separated cuts are valid for pool optima and lift the LP") {
  Rng rng(61);
  int exercised = 0;
  for (int it = 0; it < 30 && exercised < 6; ++it) {
    Instance inst = fixtures::random_small_instance(rng);
    std::vector<Column> pool = initial_columns(inst);
    for (auto& c : enum_oracle::enumerate_columns(inst, 2)) pool.push_back(c);
    MasterSpec spec;
    spec.inst = &inst;
    spec.kind = MasterKind::Aggregated;
    spec.pool = &pool;
    std::vector<ChvatalGomoryCut> cuts;
    spec.cuts = &cuts;
    MasterSolve before = solve_master(spec);
    if (!before.lp.optimal()) continue;
    bool fractional = false;
    for (std::size_t c = 0; c < pool.size(); ++c)
      if (std::abs(before.lp.x[c] - std::round(before.lp.x[c])) > 1e-6)
        fractional = true;
    if (!fractional) continue;

    std::vector<const Column*> cols;
    std::vector<double> lambda;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      cols.push_back(&pool[c]);
      lambda.push_back(before.lp.x[c]);
    }
    auto cut = separate_cgc(inst, cols, lambda, before.work_rows);
    if (!cut) continue;
    ++exercised;

    // violated by the producing point
    double lhs = 0.0;
    for (std::size_t c = 0; c < pool.size(); ++c)
      lhs += lambda[c] * cut->coefficient_for(pool[c], inst);
    CHECK(lhs >= cut->rhs + 1e-6);

    cuts.push_back(*cut);
    MasterSolve after = solve_master(spec);
    REQUIRE(after.lp.optimal());
    CHECK(after.lp.objective >= before.lp.objective - 1e-7);

    // valid for the integer optimum over the pool (exact covers)
    auto opt = enum_oracle::solve_over_columns(inst, pool, false);
    if (opt.feasible) {
      double int_lhs = 0.0;
      for (const auto& c : opt.columns)
        int_lhs += cut->coefficient_for(c, inst);
      CHECK(int_lhs <= cut->rhs + 1e-9);
    }
  }
  CHECK(exercised >= 3);
}

TEST_CASE("pricing accumulates exactly the master cut coefficient") {
  Rng rng(62);
  int exercised = 0;
  for (int it = 0; it < 40 && exercised < 10; ++it) {
    Instance inst = fixtures::random_small_instance(rng);
    // a synthetic active cut with random multipliers
    ChvatalGomoryCut cut;
    cut.index = 0;
    cut.u_task.assign(inst.n_tasks(), 0.0);
    for (auto& u : cut.u_task) u = rng.uniform_real() * 0.9;
    cut.u_work.assign(inst.skill_levels,
                      std::vector<double>(inst.time_ub() + 1, 0.0));
    for (int k = 0; k < inst.skill_levels; ++k)
      for (int tau = 0; tau <= inst.time_ub(); ++tau)
        if (rng.uniform_int(0, 5) == 0)
          cut.u_work[k][tau] = rng.uniform_real() * 0.5;
    cut.rhs = 100.0;  // irrelevant for pricing

    DualSnapshot duals;
    duals.mu.assign(inst.n_tasks(), 0.0);
    for (auto& m : duals.mu) m = rng.uniform_real() * 25.0;
    duals.delta.assign(inst.skill_levels,
                       std::vector<double>(inst.time_ub() + 1, 0.0));
    double psi = 0.5 + rng.uniform_real();
    duals.cuts.push_back({&cut, psi});

    for (int q = 0; q < inst.n_profiles(); ++q) {
      auto res = price_profile(inst, q, duals, DominanceRule::Aggregated,
                               nullptr, {});
      if (!res) continue;
      ++exercised;
      const Column& col = res->column;
      // reduced cost must equal cost - mu + psi * master coefficient
      double want = col.cost;
      for (int t : col.route) want -= duals.mu[t];
      want += psi * cut.coefficient_for(col, inst);
      CHECK(res->reduced_cost == doctest::Approx(want).epsilon(1e-7));
    }
  }
  CHECK(exercised >= 5);
}
