#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfr/feascheck.hpp"
#include "tfr/master.hpp"
#include "tfr/model.hpp"
#include "tfr/pricing.hpp"

namespace tfr {

enum class FeatureConfig { Full, Basic, NoCgc, NoDrmp, NoBranching };

FeatureConfig parse_features(const std::string& s);
std::string feature_name(FeatureConfig f);

struct SolveConfig {
  FeatureConfig features = FeatureConfig::Full;
  double time_limit = 180.0;
  std::optional<double> gamma;  // overrides the instance value when set
  std::optional<double> alpha;
  int threads = 1;
  int max_cuts = 12;
  long separation_node_budget = 1500;
  long early_term_node_budget = 60000;
  double early_term_time_limit = 30.0;
  // perfect-information mode: drop the chance constraint, keep the hard cap
  bool hard_windows_only = false;
  // start the tree on the disaggregated master (exercises the DRMP path even
  // when no disaggregated-infeasible solution triggers the switch)
  bool force_disaggregated_root = false;
  PricingConfig pricing;
};

enum class SolveStatus { Optimal, TimeLimit, Infeasible };

struct Solution {
  std::vector<Column> columns;  // selected columns of the incumbent
  std::vector<WorkerFlow> flows;
  double objective = 0.0;            // sum of shifted column costs
  double objective_unshifted = 0.0;  // master-scale objective
};

struct SolveStats {
  long nodes_explored = 0;
  long armp_nodes = 0;
  long drmp_nodes = 0;
  long disagg_infeasible = 0;
  int cuts_added = 0;
  double root_lb = 0.0;  // shifted scale
  long pricing_rounds = 0;
  long columns_generated = 0;
  long labels_created = 0;
  long labels_dominated = 0;
  long labels_extended = 0;
  long bound_violations = 0;  // child LP below the inherited parent bound
  double time_total = 0.0;
  double time_pricing = 0.0;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Solution> incumbent;
  double upper_bound = 0.0;  // shifted
  double lower_bound = 0.0;  // shifted
  double gap = 0.0;          // relative, on the master scale
  SolveStats stats;

  bool feasible() const { return status != SolveStatus::Infeasible; }
};

// Branch-Price-Cut-and-Switch. Column generation to convergence at every
// node, up to max_cuts rank-1 CGC rounds at the root, dynamic switch to the
// disaggregated master on disaggregated-infeasible integer solutions (or
// no-good rows when the switch is disabled), three-rule branching with
// fallbacks, best-first node selection, and the early-termination heuristic
// on timeout.
SolveResult solve(const Instance& inst, const SolveConfig& cfg = {});

// sum_i w_i * EF_i: offset between the master scale and reported objectives
double objective_shift(const Instance& inst);

}  // namespace tfr
