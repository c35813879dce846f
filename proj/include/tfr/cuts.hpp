#pragma once

#include <optional>
#include <vector>

#include "tfr/model.hpp"

namespace tfr {

// Rank-1 Chvatal-Gomory cut over the aggregated master rows. Multipliers are
// kept for the task covering rows and the materialized workforce rows; the
// row coefficient of a column is
//   floor( sum_{i in r} u_i + sum_k sum_{tau=tl}^{tr} b_{k,tau} u_{k,tau} )
// and the right-hand side floor( sum_i u_i + sum_k N_k sum_tau u_{k,tau} ).
// Coefficients only depend on the profile's cumulative requirements, so cuts
// stay valid unchanged when the master switches to the disaggregated form.
struct ChvatalGomoryCut {
  int index = 0;
  std::vector<double> u_task;               // per task id
  std::vector<std::vector<double>> u_work;  // [level][tau], dense
  double rhs = 0.0;

  double activity(const Column& col, const Instance& inst) const;
  int coefficient_for(const Column& col, const Instance& inst) const;
};

struct SeparationConfig {
  // Deterministic budget standing in for the paper-style very short wall
  // clock: branch-and-bound nodes for the separation MIP.
  long node_budget = 1500;
  double min_violation = 1e-6;
  double multiplier_cap = 1.0 - 1.0 / 64.0;
};

// Exact separation of a most-violated rank-1 CGC via an embedded MIP over
// the columns with positive LP value. Returns nullopt when no cut violated
// by at least min_violation is found within the budget.
std::optional<ChvatalGomoryCut> separate_cgc(
    const Instance& inst, const std::vector<const Column*>& columns,
    const std::vector<double>& lambda,
    const std::vector<std::pair<int, int>>& work_rows,  // materialized (k,tau)
    const SeparationConfig& cfg = {});

}  // namespace tfr
