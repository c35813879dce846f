#include "tfr/cuts.hpp"

#include <algorithm>
#include <cmath>

#include "tfr/lp.hpp"

namespace tfr {

double ChvatalGomoryCut::activity(const Column& col,
                                  const Instance& inst) const {
  double a = 0.0;
  for (int task : col.route) a += u_task[task];
  if (!u_work.empty()) {
    for (int k = 0; k < inst.skill_levels; ++k) {
      const auto& row = u_work[k];
      int hi = std::min(col.tr, static_cast<int>(row.size()) - 1);
      for (int tau = std::max(col.tl, 0); tau <= hi; ++tau)
        if (row[tau] != 0.0) a += row[tau] * col.occupancy_cumulative(inst, k, tau);
    }
  }
  return a;
}

int ChvatalGomoryCut::coefficient_for(const Column& col,
                                      const Instance& inst) const {
  return static_cast<int>(std::floor(activity(col, inst) + 1e-9));
}

std::optional<ChvatalGomoryCut> separate_cgc(
    const Instance& inst, const std::vector<const Column*>& columns,
    const std::vector<double>& lambda,
    const std::vector<std::pair<int, int>>& work_rows,
    const SeparationConfig& cfg) {
  // Fischetti-Lodi style MIP: continuous multipliers u in [0, cap], one
  // integer floor variable per fractional-support column, one for the rhs;
  // maximize the violation of the resulting cut.
  constexpr double kEps = 1e-6;
  std::vector<int> support;
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (lambda[c] > 1e-9) support.push_back(static_cast<int>(c));
  if (support.empty()) return std::nullopt;

  LinearProgram mip;
  int n_tasks = inst.n_tasks();
  int n_work = static_cast<int>(work_rows.size());
  // columns 0..n_tasks-1: u_i; next n_work: u_{k,tau}
  for (int i = 0; i < n_tasks; ++i)
    mip.add_col(0.0, 0.0, cfg.multiplier_cap, {});
  for (int w = 0; w < n_work; ++w)
    mip.add_col(0.0, 0.0, cfg.multiplier_cap, {});

  // f_r <= sum_{i in r} u_i + sum_w a^r_w u_w   (as f_r - sum <= 0)
  std::vector<int> f_var(support.size());
  for (std::size_t s = 0; s < support.size(); ++s) {
    const Column& col = *columns[support[s]];
    int row = mip.add_row(RowSense::LE, 0.0);
    double ub = 0.0;
    for (int task : col.route) {
      mip.cols[task].entries.push_back({row, -1.0});
      ub += cfg.multiplier_cap;
    }
    for (int w = 0; w < n_work; ++w) {
      auto [k, tau] = work_rows[w];
      int occ = col.occupancy_cumulative(inst, k, tau);
      if (occ != 0) {
        mip.cols[n_tasks + w].entries.push_back({row, -double(occ)});
        ub += occ * cfg.multiplier_cap;
      }
    }
    f_var[s] = mip.add_col(-lambda[support[s]], 0.0, std::floor(ub) + 1.0,
                           {{row, 1.0}}, /*integral=*/true);
  }

  // f_0 >= sum_i u_i + sum_k N_k sum_tau u_{k,tau} - 1 + eps
  {
    int row = mip.add_row(RowSense::LE, 1.0 - kEps);
    double ub = n_tasks * cfg.multiplier_cap;
    for (int i = 0; i < n_tasks; ++i) mip.cols[i].entries.push_back({row, 1.0});
    for (int w = 0; w < n_work; ++w) {
      int nk = inst.workforce.cumulative(work_rows[w].first);
      mip.cols[n_tasks + w].entries.push_back({row, double(nk)});
      ub += nk * cfg.multiplier_cap;
    }
    mip.add_col(1.0, 0.0, std::floor(ub) + 1.0, {{row, -1.0}},
                /*integral=*/true);
  }

  MipConfig mip_cfg;
  mip_cfg.node_limit = cfg.node_budget;
  LpSolution sol = solve_mip(mip, mip_cfg);
  if (sol.status != LpStatus::Optimal && sol.status != LpStatus::IterLimit)
    return std::nullopt;
  if (-sol.objective < cfg.min_violation) return std::nullopt;

  ChvatalGomoryCut cut;
  cut.u_task.assign(n_tasks, 0.0);
  for (int i = 0; i < n_tasks; ++i)
    cut.u_task[i] = std::clamp(sol.x[i], 0.0, cfg.multiplier_cap);
  cut.u_work.assign(inst.skill_levels,
                    std::vector<double>(inst.time_ub() + 1, 0.0));
  for (int w = 0; w < n_work; ++w) {
    auto [k, tau] = work_rows[w];
    cut.u_work[k][tau] = std::clamp(sol.x[n_tasks + w], 0.0,
                                    cfg.multiplier_cap);
  }
  double rhs_raw = 0.0;
  for (int i = 0; i < n_tasks; ++i) rhs_raw += cut.u_task[i];
  for (int w = 0; w < n_work; ++w)
    rhs_raw += inst.workforce.cumulative(work_rows[w].first) *
               cut.u_work[work_rows[w].first][work_rows[w].second];
  cut.rhs = std::floor(rhs_raw + 1e-9);

  // re-check the violation with exactly the coefficients the master will use
  double lhs = 0.0;
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (lambda[c] > 1e-9)
      lhs += lambda[c] * cut.coefficient_for(*columns[c], inst);
  if (lhs < cut.rhs + cfg.min_violation) return std::nullopt;
  return cut;
}

}  // namespace tfr
