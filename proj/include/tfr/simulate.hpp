#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfr/generator.hpp"
#include "tfr/model.hpp"
#include "tfr/search.hpp"

namespace tfr {

enum class TravelStat { Best, Mean, Median, Worst };

TravelStat parse_travel_stat(const std::string& s);
std::string travel_stat_name(TravelStat t);

// Point-mass copy of the instance at the chosen per-bin statistic. Chance
// constraints then degenerate to hard time windows.
Instance deterministic_instance(const Instance& inst, TravelStat stat);

SolveResult solve_deterministic(const Instance& inst, TravelStat stat,
                                const SolveConfig& cfg = {});

// One realized travel time per ordered location pair and bin.
struct Scenario {
  int n_locations = 0;
  int n_bins = 0;
  std::vector<std::vector<int>> travel;  // [from*n+to][bin]

  int at(int from, int to, int bin) const {
    return travel[from * n_locations + to][bin];
  }
};

Scenario sample_scenario(const Instance& inst, Rng& rng);
// Every edge at its per-bin gamma quantile.
Scenario gamma_scenario(const Instance& inst);

struct ExecutedPlan {
  std::vector<int> task_finish;  // per task id; -1 for uncovered tasks
  std::vector<int> tour_start;   // realized depot leave per solution column
  std::vector<int> tour_return;  // realized depot return
  bool postponed = false;        // any tour waited for workers
};

// Executes a plan under realized travel times: tours are implemented in
// ascending order of scheduled leave time and wait until the workers routed
// to them (per the solution's flow plan) have returned.
ExecutedPlan execute_plan(const Instance& inst, const Solution& sol,
                          const Scenario& scenario);

struct EvalMetrics {
  int scenarios = 0;
  double objective = 0.0;             // mean simulated cost, with penalties
  double objective_no_penalty = 0.0;  // mean sum w_i (F_i - EF_i)
  double sl_mean = 0.0;               // per-task service levels, aggregated
  double sl_std = 0.0;
  double sl_min = 0.0;
  std::vector<long> delay_histogram;  // count per delay length in steps
};

EvalMetrics evaluate(const Instance& inst, const Solution& sol,
                     int n_scenarios, std::uint64_t seed);

struct VssEvpiResult {
  bool available = false;
  double vss = 0.0;
  double evpi = 0.0;
};

// VSS compares the mean-travel-time plan against the stochastic plan on a
// shared scenario stream; EVPI solves the perfect-information problem (hard
// [ES, LF_e] windows, penalty objective) per scenario.
VssEvpiResult vss_evpi(const Instance& inst, const Solution& stochastic,
                       const Solution* mean_solution, int n_scenarios,
                       int n_evpi_scenarios, std::uint64_t seed,
                       const SolveConfig& pi_cfg = {});

struct SaaStep {
  int n = 0;
  double max_rel_std = 0.0;
  double max_rel_ci = 0.0;
  bool accepted = false;
};

struct SaaResult {
  int n_star = 0;
  std::vector<SaaStep> steps;
};

// Sample-average-approximation scenario count: batches of M runs per
// instance, N grows in steps of 50 until both the batch standard deviation
// and the 95% confidence half-width fall under max(0.05 * mean, 0.5).
SaaResult saa_scenario_count(
    const std::vector<std::pair<const Instance*, const Solution*>>& plans,
    int start_n, int batches, std::uint64_t seed, int max_n = 2000);

}  // namespace tfr
