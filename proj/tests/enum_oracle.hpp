#pragma once

// Test-only oracle: exhaustive enumeration of every feasible column
// (elementary route x profile x composition x depot leave time) and a direct
// MIP over them. Independent of the pricing and search modules.

#include <algorithm>
#include <optional>
#include <vector>

#include "tfr/lp.hpp"
#include "tfr/model.hpp"
#include "tfr/pricing.hpp"
#include "tfr/search.hpp"

namespace enum_oracle {

using namespace tfr;

inline void extend_routes(const Instance& inst, int profile,
                          std::vector<int>& seq, int tl,
                          const DiscreteDistribution& finish, int fg,
                          std::vector<Column>& out, int max_len) {
  if (!seq.empty()) {
    auto col = build_column(inst, seq, profile, tl);
    if (col && check_route_feasibility(*col, inst, inst.alpha))
      out.push_back(std::move(*col));
  }
  if (static_cast<int>(seq.size()) >= max_len) return;
  for (const auto& t : inst.tasks) {
    if (!t.compatible(profile)) continue;
    if (std::find(seq.begin(), seq.end(), t.id) != seq.end()) continue;
    int from = seq.empty() ? inst.depot : inst.tasks[seq.back()].location;
    auto prop = propagate_finish(finish, fg, from, t.location, t.p(profile),
                                 t.es, t.lf_e, inst.bins, inst.edges,
                                 inst.gamma);
    if (!prop) continue;
    if (inst.alpha > 0 && prop->finish.cdf(t.lf) + 1e-9 < inst.alpha) continue;
    seq.push_back(t.id);
    extend_routes(inst, profile, seq, tl, prop->finish, prop->finish_gamma,
                  out, max_len);
    seq.pop_back();
  }
}

// Every feasible (route, profile, tl) column, all route lengths.
inline std::vector<Column> enumerate_columns(const Instance& inst,
                                             int max_len = -1) {
  if (max_len < 0) max_len = inst.n_tasks();
  std::vector<Column> out;
  for (int q = 0; q < inst.n_profiles(); ++q) {
    for (const auto& t : inst.tasks) {
      if (!t.compatible(q)) continue;
      int cap = t.lf - t.p(q) - inst.edges.min_travel(inst.depot, t.location);
      for (int tl = 0; tl <= cap; ++tl) {
        std::vector<int> seq;
        extend_routes(inst, q, seq, tl, DiscreteDistribution::point(tl), tl,
                      out, max_len);
      }
    }
  }
  // drop duplicates created by different first-task iterations
  std::vector<Column> dedup;
  for (auto& c : out) {
    bool seen = false;
    for (const auto& d : dedup)
      if (d.profile == c.profile && d.tl == c.tl && d.route == c.route)
        seen = true;
    if (!seen) dedup.push_back(std::move(c));
  }
  return dedup;
}

inline std::vector<Column> enumerate_columns_disaggregated(
    const Instance& inst, int max_len = -1) {
  std::vector<Column> agg = enumerate_columns(inst, max_len);
  std::vector<Column> out;
  for (const auto& c : agg)
    for (const auto& s : inst.compositions[c.profile]) {
      Column d = c;
      d.composition = s;
      out.push_back(std::move(d));
    }
  return out;
}

struct OracleOptimum {
  bool feasible = false;
  double objective_unshifted = 0.0;
  double objective = 0.0;  // shifted
  std::vector<Column> columns;
};

// Direct binary program over an explicit column set: covering plus workforce
// rows at every occupied time.
inline OracleOptimum solve_over_columns(const Instance& inst,
                                        const std::vector<Column>& cols,
                                        bool disaggregated) {
  OracleOptimum out;
  LinearProgram lp;
  for (int i = 0; i < inst.n_tasks(); ++i) lp.add_row(RowSense::GE, 1.0);
  int time_ub = inst.time_ub();
  std::vector<char> occupied(time_ub + 1, 0);
  for (const auto& c : cols)
    for (int tau = std::max(0, c.tl); tau <= std::min(c.tr, time_ub); ++tau)
      occupied[tau] = 1;
  std::vector<std::pair<int, int>> work_rows;
  for (int k = 0; k < inst.skill_levels; ++k)
    for (int tau = 0; tau <= time_ub; ++tau)
      if (occupied[tau]) {
        work_rows.push_back({k, tau});
        lp.add_row(RowSense::LE, disaggregated
                                     ? inst.workforce.available[k]
                                     : inst.workforce.cumulative(k));
      }
  for (const auto& c : cols) {
    std::vector<std::pair<int, double>> entries;
    for (int t : c.route) entries.push_back({t, 1.0});
    for (std::size_t w = 0; w < work_rows.size(); ++w) {
      int occ = c.occupancy(inst, work_rows[w].first, work_rows[w].second);
      if (occ != 0)
        entries.push_back(
            {inst.n_tasks() + static_cast<int>(w), double(occ)});
    }
    lp.add_col(c.cost, 0.0, 1.0, std::move(entries), /*integral=*/true);
  }
  MipConfig mc;
  mc.node_limit = 2000000;
  LpSolution sol = solve_mip(lp, mc);
  if (sol.status != LpStatus::Optimal) return out;
  out.feasible = true;
  out.objective_unshifted = sol.objective;
  double shift = objective_shift(inst);
  out.objective = sol.objective - shift;
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (sol.x[c] > 0.5) out.columns.push_back(cols[c]);
  return out;
}

inline OracleOptimum oracle_optimum(const Instance& inst, int max_len = -1) {
  return solve_over_columns(
      inst, enumerate_columns_disaggregated(inst, max_len), true);
}

// Reduced cost of an enumerated column under plain task/workforce duals.
inline double reduced_cost(const Instance& inst, const Column& c,
                           const DualSnapshot& duals,
                           const std::vector<int>& occ) {
  double rc = c.cost;
  for (int t : c.route) rc -= duals.mu[t];
  for (std::size_t k = 0; k < occ.size(); ++k)
    if (occ[k] != 0) rc -= occ[k] * duals.delta_range(k, c.tl, c.tr);
  return rc;
}

}  // namespace enum_oracle
