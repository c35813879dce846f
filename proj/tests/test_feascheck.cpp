#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "enum_oracle.hpp"
#include "fixtures.hpp"
#include "tfr/feascheck.hpp"

using namespace tfr;

namespace {

// bare-bones instance used to exercise the flow check with hand-made columns
Instance flow_instance(std::vector<int> workforce,
                       std::vector<std::vector<int>> xis) {
  Instance inst;
  inst.bins = {12, 6};
  inst.n_locations = 2;
  inst.depot = 0;
  inst.skill_levels = static_cast<int>(workforce.size());
  inst.alpha = 0.5;
  inst.gamma = 0.9;
  inst.workforce.available = workforce;
  for (auto& xi : xis) {
    Profile p;
    p.id = static_cast<int>(inst.profiles.size());
    p.xi = xi;
    inst.profiles.push_back(p);
  }
  Task t;
  t.id = 0;
  t.location = 1;
  t.es = 0;
  t.lf = 40;
  t.lf_e = 40;
  t.weight = 1;
  for (auto& p : inst.profiles) t.exec_time[p.id] = 1;
  inst.tasks.push_back(t);
  inst.edges.n_locations = 2;
  inst.edges.n_bins = 2;
  inst.edges.t_det.assign(4, 0);
  inst.edges.travel.assign(
      4, {DiscreteDistribution::point(1), DiscreteDistribution::point(1)});
  inst.finalize();
  return inst;
}

Column tour(int profile, int tl, int tr) {
  Column c;
  c.route = {0};
  c.profile = profile;
  c.tl = tl;
  c.tr = tr;
  return c;
}

}  // namespace

TEST_CASE("a single affordable route passes with zero slack") {
  Instance inst = flow_instance({1, 1}, {{2, 1}});
  std::vector<Column> sel = {tour(0, 0, 5)};
  auto res = feasibility_check(sel, inst);
  CHECK(res.feasible);
  CHECK(res.slack_total == 0);
  CHECK(flows_satisfy_check(sel, inst, res.flows));
}

TEST_CASE("two overlapping routes jointly exceeding the workforce fail") {
  Instance inst = flow_instance({1}, {{1}});
  std::vector<Column> sel = {tour(0, 0, 5), tour(0, 3, 8)};
  auto res = feasibility_check(sel, inst);
  CHECK_FALSE(res.feasible);
  CHECK(res.slack_total >= 1);
}

TEST_CASE("chained routes reuse the same worker") {
  Instance inst = flow_instance({0, 1}, {{1, 1}});
  std::vector<Column> sel = {tour(0, 0, 4), tour(0, 4, 9)};  // tr <= tl chains
  auto res = feasibility_check(sel, inst);
  CHECK(res.feasible);
  bool chained = false;
  for (const auto& f : res.flows)
    if (f.from == 0 && f.to == 1 && f.level == 1 && f.count == 1)
      chained = true;
  CHECK(chained);
}

// Systematic search over three-tour configurations: every selection that
// satisfies the aggregated workforce rows at each occupied time also admits
// integral worker flows. The aggregated-infeasible pattern referenced from
// earlier work does not materialize under closed occupancy intervals and
// inclusive chaining; the switch mechanism is exercised separately through
// forced disaggregated runs.
TEST_CASE("pointwise-feasible three-tour selections always admit flows") {
  std::vector<std::vector<int>> xis = {{1, 0}, {1, 1}, {2, 1}, {2, 2}};
  long pointwise_feasible = 0;
  long flow_infeasible_total = 0;
  long pointwise_infeasible_with_slack = 0;
  for (int n1 = 0; n1 <= 2; ++n1)
    for (int n2 = 1; n2 <= 2; ++n2) {
      Instance inst = flow_instance({n1, n2}, xis);
      const int T = 5;
      for (int a1 = 0; a1 < T; ++a1)
        for (int b1 = a1; b1 < T; ++b1)
          for (int a2 = 0; a2 < T; ++a2)
            for (int b2 = a2; b2 < T; ++b2)
              for (int a3 = 0; a3 < T; ++a3)
                for (int b3 = a3; b3 < T; ++b3)
                  for (std::size_t q1 = 0; q1 < xis.size(); ++q1)
                    for (std::size_t q2 = q1; q2 < xis.size(); ++q2)
                      for (std::size_t q3 = q2; q3 < xis.size(); ++q3) {
                        int tls[3] = {a1, a2, a3};
                        int trs[3] = {b1, b2, b3};
                        int qs[3] = {int(q1), int(q2), int(q3)};
                        bool pw = true;
                        for (int k = 0; k < 2 && pw; ++k) {
                          int cap = k == 0 ? n1 + n2 : n2;
                          for (int tau = 0; tau < T && pw; ++tau) {
                            int load = 0;
                            for (int r = 0; r < 3; ++r)
                              if (tls[r] <= tau && tau <= trs[r])
                                load += xis[qs[r]][k];
                            if (load > cap) pw = false;
                          }
                        }
                        std::vector<Column> sel = {tour(qs[0], a1, b1),
                                                   tour(qs[1], a2, b2),
                                                   tour(qs[2], a3, b3)};
                        auto res = feasibility_check(sel, inst);
                        if (pw) {
                          ++pointwise_feasible;
                          if (!res.feasible) ++flow_infeasible_total;
                        } else if (!res.feasible) {
                          ++pointwise_infeasible_with_slack;
                        }
                      }
    }
  CHECK(pointwise_feasible > 50000);
  CHECK(flow_infeasible_total == 0);
  // the checker does detect genuine shortages
  CHECK(pointwise_infeasible_with_slack > 0);
}

TEST_CASE("certificate for disjoint-in-time disaggregated routes chains") {
  Instance inst = flow_instance({1, 1}, {{1, 1}});
  Column a = tour(0, 0, 4);
  a.composition = SkillComposition{0, 1};
  Column b = tour(0, 5, 9);
  b.composition = SkillComposition{0, 1};
  std::vector<Column> sel = {a, b};
  auto flows = construct_dmp_certificate(sel, inst);
  CHECK(flows_satisfy_check(sel, inst, flows));
  bool chained = false;
  for (const auto& f : flows)
    if (f.from == 0 && f.to == 1 && f.level == 1) chained = true;
  CHECK(chained);
}

TEST_CASE("certificate assigns the example composition from the depot") {
  // profile (3,2,1) executed with composition (0,2,1)
  Instance inst = flow_instance({1, 2, 1}, {{3, 2, 1}});
  Column a = tour(0, 0, 6);
  a.composition = SkillComposition{0, 2, 1};
  std::vector<Column> sel = {a};
  auto flows = construct_dmp_certificate(sel, inst);
  CHECK(flows_satisfy_check(sel, inst, flows));
  int from_depot_l2 = 0, from_depot_l3 = 0, from_depot_l1 = 0;
  for (const auto& f : flows)
    if (f.from == -1 && f.to == 0) {
      if (f.level == 0) from_depot_l1 += f.count;
      if (f.level == 1) from_depot_l2 += f.count;
      if (f.level == 2) from_depot_l3 += f.count;
    }
  CHECK(from_depot_l1 == 0);
  CHECK(from_depot_l2 == 2);
  CHECK(from_depot_l3 == 1);
}

TEST_CASE("certificates from solved disaggregated optima verify") {
  Rng rng(91);
  int solved = 0;
  for (int it = 0; it < 30 && solved < 8; ++it) {
    Instance inst = fixtures::random_small_instance(rng);
    auto opt = enum_oracle::oracle_optimum(inst);
    if (!opt.feasible || opt.columns.empty()) continue;
    ++solved;
    auto flows = construct_dmp_certificate(opt.columns, inst);
    CHECK(flows_satisfy_check(opt.columns, inst, flows));
    auto check = feasibility_check(opt.columns, inst);
    CHECK(check.feasible);
    CHECK(check.slack_total == 0);
    // conservation and depot balance hold exactly on the IP flows as well
    CHECK(flows_satisfy_check(opt.columns, inst, check.flows));
  }
  CHECK(solved >= 5);
}

TEST_CASE("feasibility check against exhaustive flow enumeration") {
  // tiny configurations, brute force over all integral flows
  std::vector<std::vector<int>> xis = {{1, 0}, {1, 1}, {2, 1}};
  Rng rng(92);
  int audited = 0;
  for (int it = 0; it < 120; ++it) {
    int n1 = rng.uniform_int(0, 2), n2 = rng.uniform_int(0, 2);
    if (n1 + n2 == 0 || n1 + n2 > 3) continue;
    Instance inst = flow_instance({n1, n2}, xis);
    int n_routes = rng.uniform_int(1, 3);
    std::vector<Column> sel;
    for (int r = 0; r < n_routes; ++r) {
      int a = rng.uniform_int(0, 4);
      sel.push_back(tour(rng.uniform_int(0, 2), a, a + rng.uniform_int(0, 4)));
    }
    auto res = feasibility_check(sel, inst);

    // brute force: per level assign each worker a chain of tours
    // (levels independent once the per-tour composition is chosen); here we
    // enumerate worker-to-tour incidence directly for tiny sizes
    int K = 2;
    std::vector<std::vector<int>> workers;  // list of levels per worker
    for (int k = 0; k < K; ++k)
      for (int w = 0; w < inst.workforce.available[k]; ++w)
        workers.push_back({k});
    int W = static_cast<int>(workers.size());
    int R = static_cast<int>(sel.size());
    // assignment[w] = subset of tours worker w serves, as bitmask; must be a
    // chain. enumerate all subset vectors
    long combos = 1;
    for (int w = 0; w < W; ++w) combos *= (1 << R);
    bool any = false;
    for (long code = 0; code < combos && !any; ++code) {
      long c = code;
      std::vector<int> mask(W);
      for (int w = 0; w < W; ++w) {
        mask[w] = c % (1 << R);
        c /= (1 << R);
      }
      bool ok = true;
      for (int w = 0; w < W && ok; ++w) {
        for (int r1 = 0; r1 < R && ok; ++r1)
          for (int r2 = r1 + 1; r2 < R && ok; ++r2)
            if ((mask[w] >> r1 & 1) && (mask[w] >> r2 & 1)) {
              bool chain = sel[r1].tr <= sel[r2].tl ||
                           sel[r2].tr <= sel[r1].tl;
              if (!chain) ok = false;
            }
      }
      for (int r = 0; r < R && ok; ++r) {
        // cumulative coverage of the tour's profile
        for (int k = 0; k < K && ok; ++k) {
          int got = 0;
          for (int w = 0; w < W; ++w)
            if ((mask[w] >> r & 1) && workers[w][0] >= k) ++got;
          if (got < inst.profiles[sel[r].profile].xi[k]) ok = false;
        }
      }
      if (ok) any = true;
    }
    CHECK(res.feasible == any);
    ++audited;
  }
  CHECK(audited > 60);
}
