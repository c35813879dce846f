#include "tfr/feascheck.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tfr/lp.hpp"

namespace tfr {

namespace {

// requirement of column c at level k: cumulative xi for aggregated columns,
// exact composition otherwise
int requirement(const Column& col, const Instance& inst, int k, bool cum) {
  if (col.composition) {
    if (!cum) return (*col.composition)[k];
    int s = 0;
    for (int l = k; l < inst.skill_levels; ++l) s += (*col.composition)[l];
    return s;
  }
  if (cum) return inst.profiles[col.profile].xi[k];
  // aggregated columns have no per-level demand; cumulative rows carry it
  return 0;
}

std::vector<std::vector<int>> predecessor_sets(
    const std::vector<Column>& sel) {
  int n = static_cast<int>(sel.size());
  std::vector<std::vector<int>> pred(n);
  for (int r = 0; r < n; ++r)
    for (int p = 0; p < n; ++p)
      if (p != r && sel[p].tr <= sel[r].tl) pred[r].push_back(p);
  return pred;
}

}  // namespace

FeasCheckResult feasibility_check(const std::vector<Column>& selected,
                                  const Instance& inst) {
  FeasCheckResult res;
  int n = static_cast<int>(selected.size());
  int K = inst.skill_levels;
  if (n == 0) {
    res.feasible = true;
    return res;
  }
  auto pred = predecessor_sets(selected);
  std::vector<std::vector<int>> succ(n);
  for (int r = 0; r < n; ++r)
    for (int p : pred[r]) succ[p].push_back(r);

  // variables: x_k^{o,r}, x_k^{r,o'}, x_k^{rho,r} for rho in pred(r),
  // chi_k^{o,r}; plus x_k^{o,o'}
  LinearProgram ip;
  auto var = [&](double cost, double ub = kInf) {
    return ip.add_col(cost, 0.0, ub, {}, /*integral=*/true);
  };
  std::vector<std::vector<int>> x_in(n, std::vector<int>(K));   // o -> r
  std::vector<std::vector<int>> x_out(n, std::vector<int>(K));  // r -> o'
  std::vector<std::vector<std::vector<int>>> x_tt(
      n, std::vector<std::vector<int>>(K));  // pred -> r, parallel to pred[r]
  std::vector<std::vector<int>> chi(n, std::vector<int>(K));
  std::vector<int> x_oo(K);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < K; ++k) {
      x_in[r][k] = var(0.0);
      x_out[r][k] = var(0.0);
      chi[r][k] = var(1.0);
      x_tt[r][k].resize(pred[r].size());
      for (std::size_t p = 0; p < pred[r].size(); ++p)
        x_tt[r][k][p] = var(0.0);
    }
  for (int k = 0; k < K; ++k) x_oo[k] = var(0.0);

  auto add_entry = [&](int row, int col, double a) {
    ip.cols[col].entries.push_back({row, a});
  };

  // (C.2) cumulative coverage per tour and level
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < K; ++k) {
      int need = requirement(selected[r], inst, k, /*cum=*/true);
      int row = ip.add_row(RowSense::GE, need);
      for (int kk = k; kk < K; ++kk) {
        add_entry(row, x_in[r][kk], 1.0);
        for (std::size_t p = 0; p < pred[r].size(); ++p)
          add_entry(row, x_tt[r][kk][p], 1.0);
      }
      add_entry(row, chi[r][k], 1.0);
    }
  // (C.3) flow conservation per tour and level
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < K; ++k) {
      int row = ip.add_row(RowSense::EQ, 0.0);
      add_entry(row, x_in[r][k], 1.0);
      for (std::size_t p = 0; p < pred[r].size(); ++p)
        add_entry(row, x_tt[r][k][p], 1.0);
      add_entry(row, x_out[r][k], -1.0);
      for (int s : succ[r]) {
        // find r's slot in pred[s]
        for (std::size_t p = 0; p < pred[s].size(); ++p)
          if (pred[s][p] == r) add_entry(row, x_tt[s][k][p], -1.0);
      }
    }
  // (C.4)-(C.5) depot balance per level
  for (int k = 0; k < K; ++k) {
    int row = ip.add_row(RowSense::EQ, inst.workforce.available[k]);
    add_entry(row, x_oo[k], 1.0);
    for (int r = 0; r < n; ++r) add_entry(row, x_in[r][k], 1.0);
    int row2 = ip.add_row(RowSense::EQ, inst.workforce.available[k]);
    add_entry(row2, x_oo[k], 1.0);
    for (int r = 0; r < n; ++r) add_entry(row2, x_out[r][k], 1.0);
  }

  LpSolution sol = solve_mip(ip);
  if (sol.status != LpStatus::Optimal && sol.status != LpStatus::IterLimit) {
    res.feasible = false;
    res.slack_total = -1;
    return res;
  }
  res.slack_total = static_cast<int>(std::llround(sol.objective));
  res.feasible = res.slack_total == 0;
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < K; ++k) {
      auto push = [&](int from, int to, double v) {
        int cnt = static_cast<int>(std::llround(v));
        if (cnt > 0) res.flows.push_back({k, from, to, cnt});
      };
      push(-1, r, sol.x[x_in[r][k]]);
      push(r, -1, sol.x[x_out[r][k]]);
      for (std::size_t p = 0; p < pred[r].size(); ++p)
        push(pred[r][p], r, sol.x[x_tt[r][k][p]]);
    }
  return res;
}

std::vector<WorkerFlow> construct_dmp_certificate(
    const std::vector<Column>& selected, const Instance& inst) {
  int n = static_cast<int>(selected.size());
  int K = inst.skill_levels;
  auto pred = predecessor_sets(selected);

  // flow bookkeeping
  std::vector<std::vector<int>> x_in(n, std::vector<int>(K, 0));
  std::vector<std::vector<std::vector<int>>> x_tt(
      n, std::vector<std::vector<int>>(K, std::vector<int>(n, 0)));
  std::vector<std::vector<int>> x_out(n, std::vector<int>(K, 0));

  auto comp_of = [&](int r) -> const SkillComposition& {
    return *selected[r].composition;
  };
  auto inflow = [&](int r, int k) {
    int s = x_in[r][k];
    for (int p : pred[r]) s += x_tt[r][k][p];
    return s;
  };
  auto outflow_tt = [&](int r, int k) {
    int s = 0;
    for (int c = 0; c < n; ++c) s += x_tt[c][k][r] * 0;  // placeholder
    return s;
  };
  (void)outflow_tt;
  // outgoing tour-to-tour flow of r at level k
  auto out_tt = [&](int r, int k) {
    int s = 0;
    for (int c = 0; c < n; ++c) {
      // r must be a predecessor of c for x_tt[c][k][r] to be meaningful
      s += x_tt[c][k][r];
    }
    return s;
  };
  std::vector<int> depot_used(K, 0);

  // tours without predecessors draw straight from the depot
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return selected[a].tl < selected[b].tl;
  });
  for (int r : order)
    if (pred[r].empty())
      for (int k = 0; k < K; ++k) {
        x_in[r][k] = comp_of(r)[k];
        depot_used[k] += x_in[r][k];
      }

  for (int r : order) {
    if (pred[r].empty()) continue;
    std::vector<int> pr = pred[r];
    std::stable_sort(pr.begin(), pr.end(), [&](int a, int b) {
      return selected[a].tl < selected[b].tl;
    });
    for (int k = 0; k < K; ++k) {
      int need = comp_of(r)[k];
      for (int rho : pr) {
        if (inflow(r, k) == need) break;
        int avail = inflow(rho, k) - out_tt(rho, k);
        int take = std::min(need - inflow(r, k), avail);
        if (take > 0) x_tt[r][k][rho] += take;
      }
      if (inflow(r, k) < need) {
        int take = std::min(need - inflow(r, k),
                            inst.workforce.available[k] - depot_used[k]);
        if (take > 0) {
          x_in[r][k] += take;
          depot_used[k] += take;
        }
      }
    }
  }
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < K; ++k) x_out[r][k] = inflow(r, k) - out_tt(r, k);

  std::vector<WorkerFlow> flows;
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < K; ++k) {
      if (x_in[r][k] > 0) flows.push_back({k, -1, r, x_in[r][k]});
      if (x_out[r][k] > 0) flows.push_back({k, r, -1, x_out[r][k]});
      for (int rho = 0; rho < n; ++rho)
        if (x_tt[r][k][rho] > 0) flows.push_back({k, rho, r, x_tt[r][k][rho]});
    }
  return flows;
}

bool flows_satisfy_check(const std::vector<Column>& selected,
                         const Instance& inst,
                         const std::vector<WorkerFlow>& flows) {
  int n = static_cast<int>(selected.size());
  int K = inst.skill_levels;
  auto pred = predecessor_sets(selected);
  for (const auto& f : flows) {
    if (f.count < 0) return false;
    if (f.from >= 0 && f.to >= 0) {
      bool ok = false;
      for (int p : pred[f.to]) ok |= p == f.from;
      if (!ok) return false;  // flow along a non-chainable pair
    }
  }
  std::vector<std::vector<int>> in(n, std::vector<int>(K, 0));
  std::vector<std::vector<int>> out(n, std::vector<int>(K, 0));
  std::vector<int> depot_out(K, 0), depot_in(K, 0);
  for (const auto& f : flows) {
    if (f.to >= 0) in[f.to][f.level] += f.count;
    if (f.from >= 0) out[f.from][f.level] += f.count;
    if (f.from < 0) depot_out[f.level] += f.count;
    if (f.to < 0) depot_in[f.level] += f.count;
  }
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k < K; ++k) {
      // coverage (C.2)
      int cum = 0;
      for (int kk = k; kk < K; ++kk) cum += in[r][kk];
      int need = selected[r].composition
                     ? [&] {
                         int s = 0;
                         for (int kk = k; kk < K; ++kk)
                           s += (*selected[r].composition)[kk];
                         return s;
                       }()
                     : inst.profiles[selected[r].profile].xi[k];
      if (cum < need) return false;
      // conservation (C.3)
      if (in[r][k] != out[r][k]) return false;
    }
  }
  // depot balance (C.4)-(C.5): every worker leaves and returns at most once;
  // the o->o' shortcut absorbs the remainder, so only an upper bound binds
  for (int k = 0; k < K; ++k) {
    if (depot_out[k] > inst.workforce.available[k]) return false;
    if (depot_in[k] != depot_out[k]) return false;
  }
  return true;
}

}  // namespace tfr
