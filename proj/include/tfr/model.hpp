#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tfr/distribution.hpp"

namespace tfr {

// Equal-length partition of the planning horizon. Times outside the horizon
// are clamped into the first/last bin so bin_of is total.
struct TimeBins {
  int horizon = 0;     // number of time steps
  int bin_length = 0;  // steps per bin

  int count() const { return horizon / bin_length; }
  int bin_of(int t) const {
    if (t < 0) return 0;
    int b = t / bin_length;
    return b >= count() ? count() - 1 : b;
  }
};

struct Task {
  int id = 0;
  int location = 0;
  int es = 0;
  int lf = 0;
  int lf_e = 0;
  double weight = 1.0;
  std::map<int, int> exec_time;  // profile id -> p_{i,q} > 0
  int ef = 0;                    // es + min exec time over compatible profiles

  bool compatible(int profile) const { return exec_time.count(profile) > 0; }
  int p(int profile) const { return exec_time.at(profile); }
};

// Cumulative requirement: xi[k] workers of skill level >= k+1 (0-based index).
struct Profile {
  int id = 0;
  std::vector<int> xi;

  int team_size() const { return xi.empty() ? 0 : xi[0]; }
};

// Exact per-level worker counts realizing a profile (Eqs. 1-2).
using SkillComposition = std::vector<int>;

struct Workforce {
  std::vector<int> available;  // N^D_k per level, index 0 = level 1

  int levels() const { return static_cast<int>(available.size()); }
  // N_k: workers of level >= k+1 (0-based)
  int cumulative(int k) const {
    int n = 0;
    for (int l = k; l < levels(); ++l) n += available[l];
    return n;
  }
};

// Per ordered location pair and per bin: full travel-time distribution
// (deterministic part + delays).
struct EdgeDistributions {
  int n_locations = 0;
  int n_bins = 0;
  std::vector<int> t_det;                            // [from*n+to]
  std::vector<std::vector<DiscreteDistribution>> travel;  // [from*n+to][bin]

  const DiscreteDistribution& dist(int from, int to, int bin) const {
    return travel[from * n_locations + to][bin];
  }
  int det(int from, int to) const { return t_det[from * n_locations + to]; }
  int quantile(int from, int to, int bin, double gamma) const {
    return dist(from, to, bin).quantile(gamma);
  }
  int worst(int from, int to, int bin) const {
    return dist(from, to, bin).max_time();
  }
  int min_travel(int from, int to) const;   // min support over all bins
  int max_travel(int from, int to) const;   // max support over all bins
};

struct Instance {
  std::string name;
  int step_minutes = 2;
  TimeBins bins;
  int n_locations = 0;
  int depot = 0;
  int skill_levels = 0;
  double alpha = 0.9;
  double gamma = 0.9;
  std::vector<Task> tasks;
  std::vector<Profile> profiles;
  Workforce workforce;
  EdgeDistributions edges;
  std::vector<std::vector<SkillComposition>> compositions;  // per profile

  int n_tasks() const { return static_cast<int>(tasks.size()); }
  int n_profiles() const { return static_cast<int>(profiles.size()); }
  // Latest time index any occupancy can reach (tr bound): max LF_e + max
  // travel back to the depot.
  int time_ub() const;
  std::vector<int> profile_tasks(int q) const;  // I_q
  void finalize();            // derived fields (EF, compositions); validates
  void validate() const;      // throws std::invalid_argument naming the invariant
};

// All skill compositions s satisfying
//   sum_k s_k = xi_1  and  sum_{l>=k} s_l >= xi_k for all k.
// Deterministic lexicographic order.
std::vector<SkillComposition> enumerate_skill_compositions(const Profile& p,
                                                           int levels);

// One propagation step along an edge (Eq. 5 plus execution time): the travel
// distribution of the bin holding the predecessor's median finish is
// convolved in, mass before ES_j collapses onto ES_j, and the whole thing is
// shifted by the execution time. Returns nullopt when the resulting support
// exceeds lf_e_j (the extension cannot satisfy the hard delay cap).
struct PropagationResult {
  DiscreteDistribution finish;
  int finish_gamma = 0;  // omega_gamma-scenario finish
};
std::optional<PropagationResult> propagate_finish(
    const DiscreteDistribution& prev_finish, int prev_finish_gamma,
    int from_loc, int to_loc, int exec_time, int es_j, int lf_e_j,
    const TimeBins& bins, const EdgeDistributions& edges, double gamma);

struct Column {
  std::vector<int> route;             // task ids, depot implicit at both ends
  int profile = -1;
  std::optional<SkillComposition> composition;  // set for disaggregated columns
  int tl = 0;
  int tr = 0;                         // omega_gamma-scenario depot return
  std::vector<DiscreteDistribution> finish;  // per route position
  std::vector<int> finish_gamma;             // per route position
  double cost = 0.0;         // objective coefficient: sum w_i E[F_i + P_i]
  double cost_shifted = 0.0; // reported cost:        sum w_i E[(F_i-EF_i) + P_i]
  bool artificial = false;

  bool contains(int task) const;
  int finish_gamma_of(int task) const;
  // Workforce occupancy at (level k, time tau): the composition's exact
  // per-level count when one is set, the profile's cumulative xi otherwise.
  int occupancy(const Instance& inst, int k, int tau) const;
  // Always the cumulative requirement (workers of level >= k+1); CGC
  // coefficients are defined on this regardless of the composition.
  int occupancy_cumulative(const Instance& inst, int k, int tau) const;
  bool occupies(int tau) const { return tl <= tau && tau <= tr; }
};

// Builds a column for the given route/profile/tl by propagating finish
// distributions from the depot. Returns nullopt if any extension violates the
// extended window (4); chance-constraint (3) is not checked here.
std::optional<Column> build_column(const Instance& inst,
                                   const std::vector<int>& route, int profile,
                                   int tl);

// sum_i w_i * E[(F_i - EF_i) + P_i(F_i)], quadratic penalty beyond LF_i.
double route_cost(const Column& col, const Instance& inst);
// Same without the EF shift: sum_i w_i * E[F_i + P_i(F_i)].
double route_cost_unshifted(const Column& col, const Instance& inst);

// Eqs. (3)-(4) for every task on the route.
bool check_route_feasibility(const Column& col, const Instance& inst,
                             double alpha);

double quadratic_penalty_expectation(const DiscreteDistribution& f, int lf);

}  // namespace tfr
