#include "tfr/master.hpp"

#include <algorithm>
#include <cmath>

namespace tfr {

LinearProgram build_master_lp(const MasterSpec& spec, MasterSolve& layout) {
  const Instance& inst = *spec.inst;
  const std::vector<Column>& pool = *spec.pool;
  LinearProgram lp;

  layout.n_tasks = inst.n_tasks();
  for (int i = 0; i < inst.n_tasks(); ++i) lp.add_row(RowSense::GE, 1.0);

  // workforce rows at occupied times only
  int levels = inst.skill_levels;
  int time_ub = inst.time_ub();
  std::vector<char> occupied(time_ub + 1, 0);
  for (const auto& col : pool)
    for (int tau = std::max(col.tl, 0); tau <= std::min(col.tr, time_ub); ++tau)
      occupied[tau] = 1;
  layout.first_work_row = lp.n_rows();
  layout.work_rows.clear();
  for (int k = 0; k < levels; ++k) {
    int cap = spec.kind == MasterKind::Aggregated
                  ? inst.workforce.cumulative(k)
                  : inst.workforce.available[k];
    for (int tau = 0; tau <= time_ub; ++tau)
      if (occupied[tau]) {
        layout.work_rows.push_back({k, tau});
        lp.add_row(RowSense::LE, cap);
      }
  }

  layout.first_cut_row = lp.n_rows();
  if (spec.cuts)
    for (std::size_t g = 0; g < spec.cuts->size(); ++g)
      lp.add_row(RowSense::LE, (*spec.cuts)[g].rhs);

  layout.first_tour_row = lp.n_rows();
  for (const auto& row : spec.tour_rows) lp.add_row(row.sense, row.rhs);

  layout.first_nogood_row = lp.n_rows();
  for (const auto& ng : spec.nogoods)
    lp.add_row(RowSense::LE, static_cast<double>(ng.members.size()) - 1.0);

  layout.first_forced_row = lp.n_rows();
  for (std::size_t f = 0; f < spec.forced_sums.size(); ++f)
    lp.add_row(RowSense::GE, 1.0);

  for (std::size_t c = 0; c < pool.size(); ++c) {
    const Column& col = pool[c];
    std::vector<std::pair<int, double>> entries;
    for (int task : col.route) entries.push_back({task, 1.0});
    for (std::size_t w = 0; w < layout.work_rows.size(); ++w) {
      auto [k, tau] = layout.work_rows[w];
      int occ = col.occupancy(inst, k, tau);
      if (occ != 0)
        entries.push_back({layout.first_work_row + static_cast<int>(w),
                           static_cast<double>(occ)});
    }
    if (spec.cuts)
      for (std::size_t g = 0; g < spec.cuts->size(); ++g) {
        int coef = (*spec.cuts)[g].coefficient_for(col, inst);
        if (coef != 0)
          entries.push_back({layout.first_cut_row + static_cast<int>(g),
                             static_cast<double>(coef)});
      }
    for (std::size_t r = 0; r < spec.tour_rows.size(); ++r)
      if (col.occupies(spec.tour_rows[r].tau_star))
        entries.push_back({layout.first_tour_row + static_cast<int>(r), 1.0});
    for (std::size_t r = 0; r < spec.nogoods.size(); ++r) {
      const auto& mem = spec.nogoods[r].members;
      if (std::find(mem.begin(), mem.end(), static_cast<int>(c)) != mem.end())
        entries.push_back({layout.first_nogood_row + static_cast<int>(r), 1.0});
    }
    for (std::size_t r = 0; r < spec.forced_sums.size(); ++r) {
      const auto& fs = spec.forced_sums[r];
      if (col.profile == fs.profile && col.tl == fs.tl && col.route == fs.route)
        entries.push_back({layout.first_forced_row + static_cast<int>(r), 1.0});
    }
    bool active = spec.active.empty() || spec.active[c];
    bool forced = !spec.forced.empty() && spec.forced[c];
    double lb = forced ? 1.0 : 0.0;
    double ub = active ? kInf : 0.0;
    lp.add_col(col.cost, lb, ub, std::move(entries));
  }
  return lp;
}

MasterSolve solve_master(const MasterSpec& spec, const Basis* warm) {
  MasterSolve out;
  LinearProgram lp = build_master_lp(spec, out);
  out.lp = solve_lp(lp, warm);
  return out;
}

DualSnapshot make_dual_snapshot(const MasterSpec& spec, const MasterSolve& ms,
                                std::vector<TrackedColumn>* tracked) {
  const Instance& inst = *spec.inst;
  DualSnapshot d;
  d.mu.assign(inst.n_tasks(), 0.0);
  if (!ms.lp.optimal()) return d;
  for (int i = 0; i < inst.n_tasks(); ++i) d.mu[i] = ms.lp.y[i];

  int time_ub = inst.time_ub();
  d.delta.assign(inst.skill_levels, std::vector<double>(time_ub + 1, 0.0));
  for (std::size_t w = 0; w < ms.work_rows.size(); ++w) {
    auto [k, tau] = ms.work_rows[w];
    d.delta[k][tau] = ms.lp.y[ms.first_work_row + static_cast<int>(w)];
  }
  if (spec.cuts)
    for (std::size_t g = 0; g < spec.cuts->size(); ++g)
      d.cuts.push_back({&(*spec.cuts)[g],
                        std::max(0.0, -ms.lp.y[ms.first_cut_row +
                                                static_cast<int>(g)])});
  for (std::size_t r = 0; r < spec.tour_rows.size(); ++r)
    d.tour_rows.push_back({spec.tour_rows[r].tau_star,
                           ms.lp.y[ms.first_tour_row + static_cast<int>(r)]});
  if (tracked) {
    const std::vector<Column>& pool = *spec.pool;
    for (std::size_t r = 0; r < spec.nogoods.size(); ++r) {
      double y = ms.lp.y[ms.first_nogood_row + static_cast<int>(r)];
      if (std::abs(y) < 1e-12) continue;
      for (int c : spec.nogoods[r].members) {
        const Column& col = pool[c];
        if (col.artificial) continue;
        TrackedColumn tc;
        tc.route = col.route;
        tc.profile = col.profile;
        tc.tl = col.tl;
        tc.composition = col.composition;
        tc.hard_forbid = false;
        tc.sink_dual = y;
        tracked->push_back(tc);
      }
    }
    for (std::size_t r = 0; r < spec.forced_sums.size(); ++r) {
      double y = ms.lp.y[ms.first_forced_row + static_cast<int>(r)];
      if (std::abs(y) < 1e-12) continue;
      TrackedColumn tc;
      tc.route = spec.forced_sums[r].route;
      tc.profile = spec.forced_sums[r].profile;
      tc.tl = spec.forced_sums[r].tl;
      tc.hard_forbid = false;
      tc.sink_dual = y;
      tracked->push_back(tc);
    }
  }
  return d;
}

double artificial_cost(const Instance& inst) {
  double worst = 0.0;
  for (const auto& t : inst.tasks)
    worst += t.weight *
             (t.lf_e + double(t.lf_e - t.lf) * double(t.lf_e - t.lf));
  return 10.0 * worst;
}

std::vector<Column> initial_columns(const Instance& inst) {
  std::vector<Column> out;

  Column art;
  art.artificial = true;
  art.tl = 0;
  art.tr = inst.time_ub();
  for (const auto& t : inst.tasks) {
    art.route.push_back(t.id);
    art.finish.push_back(DiscreteDistribution::point(t.lf_e));
    art.finish_gamma.push_back(t.lf_e);
  }
  art.cost = artificial_cost(inst);
  art.cost_shifted = art.cost;
  out.push_back(art);

  for (const auto& t : inst.tasks) {
    for (const auto& [q, p] : t.exec_time) {
      (void)p;
      int start = std::max(
          0, t.es - inst.edges.min_travel(inst.depot, t.location));
      std::optional<Column> col;
      // the paper's earliest leave time, then earlier (more truncation),
      // then later as a fallback
      std::vector<int> candidates;
      for (int tl = start; tl >= 0; --tl) candidates.push_back(tl);
      int cap = t.lf - t.p(q) - inst.edges.min_travel(inst.depot, t.location);
      for (int tl = start + 1; tl <= cap; ++tl) candidates.push_back(tl);
      for (int tl : candidates) {
        auto c = build_column(inst, {t.id}, q, tl);
        if (c && check_route_feasibility(*c, inst, inst.alpha)) {
          col = std::move(c);
          break;
        }
      }
      if (col) out.push_back(std::move(*col));
    }
  }
  return out;
}

std::vector<Column> expand_compositions(const Instance& inst,
                                        const Column& col) {
  std::vector<Column> out;
  if (col.artificial) {
    Column art = col;
    art.composition = inst.workforce.available;
    out.push_back(std::move(art));
    return out;
  }
  for (const auto& s : inst.compositions[col.profile]) {
    Column c = col;
    c.composition = s;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace tfr
