#pragma once

// Shared test fixtures: the worked pricing example from the problem domain
// (two time bins, three tasks, one skill level) and a family of small random
// instances used by the enumeration oracles.

#include <vector>

#include "tfr/generator.hpp"
#include "tfr/model.hpp"
#include "tfr/pricing.hpp"

namespace fixtures {

using namespace tfr;

inline void set_edge(Instance& inst, int from, int to,
                     std::vector<DiscreteDistribution> per_bin) {
  inst.edges.travel[from * inst.n_locations + to] = std::move(per_bin);
  inst.edges.t_det[from * inst.n_locations + to] =
      inst.edges.travel[from * inst.n_locations + to][0].min_time();
}

// Worked example: depot plus tasks at locations 1..3, bins {0..5} and
// {6..11}, one skill level, unit team. Task ids: 0 and 1 start at time 0,
// task 2 opens at 3 with a wide window.
inline Instance example2_instance() {
  Instance inst;
  inst.name = "worked-example";
  inst.step_minutes = 2;
  inst.bins = {12, 6};
  inst.n_locations = 4;
  inst.depot = 0;
  inst.skill_levels = 1;
  inst.alpha = 0.5;
  inst.gamma = 0.95;
  inst.workforce.available = {3};
  Profile q;
  q.id = 0;
  q.xi = {1};
  inst.profiles.push_back(q);

  auto task = [&](int id, int loc, int es, int lf, int lf_e) {
    Task t;
    t.id = id;
    t.location = loc;
    t.es = es;
    t.lf = lf;
    t.lf_e = lf_e;
    t.weight = 1.0;
    t.exec_time[0] = 3;
    inst.tasks.push_back(t);
  };
  task(0, 1, 0, 10, 10);
  task(1, 2, 0, 10, 10);
  task(2, 3, 3, 15, 15);

  int n = inst.n_locations;
  inst.edges.n_locations = n;
  inst.edges.n_bins = 2;
  inst.edges.t_det.assign(n * n, 1);
  inst.edges.travel.assign(n * n, {});
  auto pt = [](int v) { return DiscreteDistribution::point(v); };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) set_edge(inst, a, b, {pt(1), pt(1)});
  // depot -> task 0: two equally likely travel times in the first bin
  set_edge(inst, 0, 1,
           {DiscreteDistribution::from_pairs({{1, 0.5}, {2, 0.5}}),
            DiscreteDistribution::from_pairs({{1, 0.5}, {2, 0.5}})});
  // task 0 -> task 2: unit travel in the second bin
  set_edge(inst, 1, 3, {pt(1), pt(1)});
  // depot -> task 1: unit travel
  set_edge(inst, 0, 2, {pt(1), pt(1)});
  // task 1 -> task 2: 3 or 4, first bin governs
  set_edge(inst, 2, 3,
           {DiscreteDistribution::from_pairs({{3, 0.5}, {4, 0.5}}),
            DiscreteDistribution::from_pairs({{3, 0.5}, {4, 0.5}})});
  inst.finalize();
  return inst;
}

// Duals of the worked example: mu = (2, 0, 0); delta = -2 on {0,1},
// -1 on [2,10], 0 beyond.
inline DualSnapshot example2_duals(const Instance& inst) {
  DualSnapshot d;
  d.mu = {2.0, 0.0, 0.0};
  d.delta.assign(1, std::vector<double>(inst.time_ub() + 1, 0.0));
  for (int tau = 0; tau <= 1; ++tau) d.delta[0][tau] = -2.0;
  for (int tau = 2; tau <= 10; ++tau) d.delta[0][tau] = -1.0;
  return d;
}

struct SmallParams {
  int n_tasks = 4;
  int levels = 2;
  int horizon = 24;
  int bin_length = 12;
  double alpha = 0.8;
  double gamma = 0.9;
};

// Random desk-scale instance: one gate per task, two profiles, two bins,
// travel supports of at most three points.
inline Instance random_small_instance(Rng& rng, const SmallParams& p = {}) {
  Instance inst;
  inst.name = "small";
  inst.bins = {p.horizon, p.bin_length};
  inst.n_locations = p.n_tasks + 1;
  inst.depot = 0;
  inst.skill_levels = p.levels;
  inst.alpha = p.alpha;
  inst.gamma = p.gamma;

  Profile q0, q1;
  q0.id = 0;
  q0.xi.assign(p.levels, 0);
  q0.xi[0] = 1;
  q1.id = 1;
  q1.xi.assign(p.levels, 0);
  q1.xi[0] = 2;
  if (p.levels > 1) q1.xi[1] = 1;
  inst.profiles = {q0, q1};

  for (int i = 0; i < p.n_tasks; ++i) {
    Task t;
    t.id = i;
    t.location = i + 1;
    int p_slow = rng.uniform_int(3, 4);
    int p_fast = rng.uniform_int(2, 3);
    int compat = rng.uniform_int(0, 2);  // 0: slow only, 1: fast only, 2: both
    if (compat != 1) t.exec_time[0] = p_slow;
    if (compat != 0) t.exec_time[1] = p_fast;
    int p_max = 0;
    for (auto& [q, pe] : t.exec_time) p_max = std::max(p_max, pe);
    t.es = rng.uniform_int(2, p.horizon / 2);
    t.lf = t.es + p_max + rng.uniform_int(1, 3);
    t.lf_e = t.lf + 2;
    t.weight = rng.uniform_int(1, 3);
    inst.tasks.push_back(t);
  }

  int n = inst.n_locations;
  inst.edges.n_locations = n;
  inst.edges.n_bins = inst.bins.count();
  inst.edges.t_det.assign(n * n, 0);
  inst.edges.travel.assign(n * n, {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      int det = rng.uniform_int(1, 2);
      int width = rng.uniform_int(0, 2);  // delay support size - 1
      std::vector<DiscreteDistribution> per_bin;
      for (int k = 0; k < inst.edges.n_bins; ++k) {
        std::vector<std::pair<int, double>> pairs;
        if (width == 0) {
          pairs = {{det, 1.0}};
        } else {
          double head = 0.35 + 0.5 * rng.uniform_real();
          // later bins shift mass to larger delays
          head = std::max(0.1, head - 0.15 * k);
          if (width == 1) {
            pairs = {{det, head}, {det + 1, 1.0 - head}};
          } else {
            double mid = (1.0 - head) * 0.6;
            pairs = {{det, head}, {det + 1, mid}, {det + 2, 1.0 - head - mid}};
          }
        }
        per_bin.push_back(DiscreteDistribution::from_pairs(pairs));
      }
      inst.edges.travel[a * n + b] = std::move(per_bin);
      inst.edges.t_det[a * n + b] = det;
    }

  inst.workforce.available.assign(p.levels, 0);
  inst.workforce.available[0] = rng.uniform_int(1, 3);
  if (p.levels > 1) inst.workforce.available[1] = rng.uniform_int(1, 2);
  inst.finalize();
  return inst;
}

}  // namespace fixtures
