#pragma once

#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "tfr/cuts.hpp"
#include "tfr/model.hpp"

namespace tfr {

// Dual values of the current restricted master, plus the node-local rows the
// pricing step has to account for. Immutable during one pricing round.
struct DualSnapshot {
  std::vector<double> mu;                  // covering-row duals, >= 0
  std::vector<std::vector<double>> delta;  // workforce duals [level][tau], <= 0

  struct CutRef {
    const ChvatalGomoryCut* cut;
    double psi;  // >= 0
  };
  std::vector<CutRef> cuts;

  struct TourCountRef {
    int tau_star;
    double dual;  // sign per row sense
  };
  std::vector<TourCountRef> tour_rows;

  double delta_range(int k, int a, int b) const {
    if (delta.empty()) return 0.0;
    const auto& row = delta[k];
    double s = 0.0;
    int hi = std::min(b, static_cast<int>(row.size()) - 1);
    for (int t = std::max(a, 0); t <= hi; ++t) s += row[t];
    return s;
  }
};

struct TaskWindow {
  int lo = std::numeric_limits<int>::min();
  int hi = std::numeric_limits<int>::max();
  bool contains(int t) const { return lo <= t && t <= hi; }
};

// A column the node tracks during pricing: rule-3 forbidden columns are
// discarded when regenerated (or their composition skipped in DMP mode);
// no-good-row members get the row's dual charged on exact regeneration.
struct TrackedColumn {
  std::vector<int> route;
  int profile = -1;
  int tl = 0;
  std::optional<SkillComposition> composition;
  bool hard_forbid = false;
  double sink_dual = 0.0;
};

struct NodeFilters {
  std::vector<char> task_removed;          // per task id
  std::vector<TaskWindow> finish_windows;  // per task id, on F_i(omega_gamma)
  std::vector<TrackedColumn> tracked;

  bool removed(int task) const {
    return !task_removed.empty() && task_removed[task];
  }
  bool window_ok(int task, int fg) const {
    return finish_windows.empty() || finish_windows[task].contains(fg);
  }
};

struct PricingConfig {
  bool use_containers = true;
  bool use_delta_arcs = true;
  bool use_dssr = true;
  bool use_dominance = true;
  int container_size = 5;
  int delta_arcs = 4;
  double rc_threshold = -1e-9;
};

enum class DominanceRule { Aggregated, Disaggregated };

// Per-profile pricing network. Arc (i,j) exists unless pruning condition (14)
// holds for every candidate finish time of i, or the depot-split rule (15)
// holds in every bin.
struct PricingGraph {
  int profile = -1;
  std::vector<int> tasks;              // task ids in I_q, filtered
  std::vector<int> index_of;           // task id -> position or -1
  std::vector<std::vector<char>> arc;  // [from pos][to pos]
};

PricingGraph build_pricing_graph(const Instance& inst, int profile,
                                 const NodeFilters* filters = nullptr);

// A completed o-o' path with its reduced cost under the network's occupancy.
struct SinkLabel {
  std::vector<int> route;
  int tl = 0;
  int tr = 0;  // omega_gamma-scenario depot return
  double cost = 0.0;
  std::vector<int> tracked_full;  // tracked columns this path regenerates
};

struct PricingStats {
  long labels_created = 0;
  long labels_dominated = 0;
  long labels_extended = 0;
  long dssr_rounds = 0;
};

// Runs the labeling algorithm on one network with the given per-level
// occupancy coefficients and dominance rule, returning every sink label.
// `initial` restricts the initial (task position, tl) labels when non-null
// (container heuristic); `allowed_arc` masks extensions when non-null
// (delta-arc heuristic); `critical` holds DSSR-active task ids (task
// resources relaxed to path length when use_dssr is set).
std::vector<SinkLabel> run_labeling(
    const Instance& inst, const PricingGraph& graph, const DualSnapshot& duals,
    const std::vector<int>& occupancy, DominanceRule rule,
    const NodeFilters* filters, const PricingConfig& cfg,
    const std::set<int>& critical,
    const std::vector<std::pair<int, int>>* initial = nullptr,
    const std::vector<std::vector<char>>* allowed_arc = nullptr,
    PricingStats* stats = nullptr);

struct PricedColumn {
  Column column;
  double reduced_cost = 0.0;
};

// Full pricing for one profile: containers and delta-arc passes around a DSSR
// loop. Aggregated mode prices with the profile's cumulative requirements;
// disaggregated mode prices one network with the lexicographically smallest
// composition and post-optimizes the composition over the sink labels.
std::optional<PricedColumn> price_profile(const Instance& inst, int profile,
                                          const DualSnapshot& duals,
                                          DominanceRule rule,
                                          const NodeFilters* filters,
                                          const PricingConfig& cfg,
                                          PricingStats* stats = nullptr);

// Exposed for tests: feasible initial depot-leave times for (task, profile).
std::vector<int> feasible_leave_times(const Instance& inst, int task,
                                      int profile,
                                      const NodeFilters* filters = nullptr);

// Exposed for tests: the full label state reached by following `path` from a
// given depot leave time, under the network's occupancy coefficients.
struct LabelProbe {
  double cost = 0.0;
  double offset_cost = 0.0;  // cost plus the accumulated workforce penalty
  int finish_gamma = 0;
  int median = 0;
  int tl = 0;
  DiscreteDistribution finish;
  std::vector<std::pair<int, int>> task_resources;  // (task id, 0/1)
};

std::optional<LabelProbe> probe_label(const Instance& inst,
                                      const PricingGraph& graph,
                                      const DualSnapshot& duals,
                                      const std::vector<int>& occupancy,
                                      const std::vector<int>& path, int tl,
                                      const PricingConfig& cfg = {});

// Dominance verdict between the labels reached by two paths (same end node),
// under Definition-style rule selection. nullopt when either path is
// infeasible.
std::optional<bool> probe_dominance(const Instance& inst,
                                    const PricingGraph& graph,
                                    const DualSnapshot& duals,
                                    const std::vector<int>& occupancy,
                                    DominanceRule rule,
                                    const std::vector<int>& path_a, int tl_a,
                                    const std::vector<int>& path_b, int tl_b,
                                    const PricingConfig& cfg = {});

}  // namespace tfr
