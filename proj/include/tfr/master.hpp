#pragma once

#include <optional>
#include <vector>

#include "tfr/cuts.hpp"
#include "tfr/lp.hpp"
#include "tfr/model.hpp"
#include "tfr/pricing.hpp"

namespace tfr {

enum class MasterKind { Aggregated, Disaggregated };

struct TourCountRow {
  int tau_star = 0;
  RowSense sense = RowSense::LE;
  double rhs = 0.0;
};

// Forbids one specific integer selection: sum of the members <= |members|-1.
struct NoGoodRow {
  std::vector<int> members;  // pool column indices
};

// Disaggregated counterpart of forcing an aggregated column: the compositions
// of one (route, profile, tl) must jointly be selected at least once.
struct ForcedSumRow {
  std::vector<int> route;
  int profile = -1;
  int tl = 0;
};

// Everything needed to materialize the restricted master LP for one node.
struct MasterSpec {
  const Instance* inst = nullptr;
  MasterKind kind = MasterKind::Aggregated;
  const std::vector<Column>* pool = nullptr;
  const std::vector<ChvatalGomoryCut>* cuts = nullptr;
  std::vector<TourCountRow> tour_rows;
  std::vector<NoGoodRow> nogoods;
  std::vector<ForcedSumRow> forced_sums;
  std::vector<char> active;  // per pool column; inactive fixed to zero
  std::vector<char> forced;  // per pool column; lower bound one
};

struct MasterSolve {
  LpSolution lp;
  // materialized workforce rows, parallel to their row indices
  std::vector<std::pair<int, int>> work_rows;  // (level, tau)
  int n_tasks = 0;
  int first_work_row = 0;
  int first_cut_row = 0;
  int first_tour_row = 0;
  int first_nogood_row = 0;
  int first_forced_row = 0;
};

// Builds the LP over the active pool columns. Covering rows use >= 1 exactly;
// workforce rows are materialized only at times some pool column occupies.
LinearProgram build_master_lp(const MasterSpec& spec, MasterSolve& layout);

MasterSolve solve_master(const MasterSpec& spec, const Basis* warm = nullptr);

// Duals arranged for the pricing step. No-good rows and forced-sum rows are
// translated into tracked columns; rule-3 forbidden columns must be appended
// by the caller.
DualSnapshot make_dual_snapshot(const MasterSpec& spec, const MasterSolve& ms,
                                std::vector<TrackedColumn>* tracked);

// Singleton warm-start columns (one per task/compatible profile at the
// earliest feasible depot leave time) preceded by the artificial column that
// covers every task at LF_e and occupies the whole workforce.
std::vector<Column> initial_columns(const Instance& inst);

// Expands an aggregated column into one disaggregated column per composition.
std::vector<Column> expand_compositions(const Instance& inst,
                                        const Column& col);

double artificial_cost(const Instance& inst);

}  // namespace tfr
