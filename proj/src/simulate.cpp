#include "tfr/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tfr {

TravelStat parse_travel_stat(const std::string& s) {
  if (s == "best") return TravelStat::Best;
  if (s == "mean") return TravelStat::Mean;
  if (s == "median") return TravelStat::Median;
  if (s == "worst") return TravelStat::Worst;
  throw std::invalid_argument("travel stat must be best, mean, median or worst");
}

std::string travel_stat_name(TravelStat t) {
  switch (t) {
    case TravelStat::Best: return "best";
    case TravelStat::Mean: return "mean";
    case TravelStat::Median: return "median";
    default: return "worst";
  }
}

Instance deterministic_instance(const Instance& inst, TravelStat stat) {
  Instance det = inst;
  for (int a = 0; a < inst.n_locations; ++a)
    for (int b = 0; b < inst.n_locations; ++b) {
      if (a == b) continue;
      for (int k = 0; k < inst.edges.n_bins; ++k) {
        const auto& d = inst.edges.dist(a, b, k);
        int v = 0;
        switch (stat) {
          case TravelStat::Best: v = d.min_time(); break;
          case TravelStat::Mean:
            v = static_cast<int>(std::llround(d.expectation()));
            break;
          case TravelStat::Median: v = d.median(); break;
          case TravelStat::Worst: v = d.max_time(); break;
        }
        det.edges.travel[a * inst.n_locations + b][k] =
            DiscreteDistribution::point(v);
      }
    }
  return det;
}

SolveResult solve_deterministic(const Instance& inst, TravelStat stat,
                                const SolveConfig& cfg) {
  return solve(deterministic_instance(inst, stat), cfg);
}

Scenario sample_scenario(const Instance& inst, Rng& rng) {
  Scenario sc;
  sc.n_locations = inst.n_locations;
  sc.n_bins = inst.edges.n_bins;
  sc.travel.assign(inst.n_locations * inst.n_locations,
                   std::vector<int>(sc.n_bins, 0));
  for (int a = 0; a < inst.n_locations; ++a)
    for (int b = 0; b < inst.n_locations; ++b) {
      if (a == b) continue;
      for (int k = 0; k < sc.n_bins; ++k) {
        const auto& d = inst.edges.dist(a, b, k);
        double u = rng.uniform_real();
        double cum = 0.0;
        int v = d.max_time();
        for (int i = 0; i < d.size(); ++i) {
          cum += d.probs()[i];
          if (u < cum) {
            v = d.times()[i];
            break;
          }
        }
        sc.travel[a * inst.n_locations + b][k] = v;
      }
    }
  return sc;
}

Scenario gamma_scenario(const Instance& inst) {
  Scenario sc;
  sc.n_locations = inst.n_locations;
  sc.n_bins = inst.edges.n_bins;
  sc.travel.assign(inst.n_locations * inst.n_locations,
                   std::vector<int>(sc.n_bins, 0));
  for (int a = 0; a < inst.n_locations; ++a)
    for (int b = 0; b < inst.n_locations; ++b) {
      if (a == b) continue;
      for (int k = 0; k < sc.n_bins; ++k)
        sc.travel[a * inst.n_locations + b][k] =
            inst.edges.quantile(a, b, k, inst.gamma);
    }
  return sc;
}

ExecutedPlan execute_plan(const Instance& inst, const Solution& sol,
                          const Scenario& scenario) {
  ExecutedPlan out;
  int n = static_cast<int>(sol.columns.size());
  out.task_finish.assign(inst.n_tasks(), -1);
  out.tour_start.assign(n, 0);
  out.tour_return.assign(n, 0);

  // workers reach a tour either fresh from the depot or from the tours the
  // flow plan routes them out of
  std::vector<std::vector<int>> inbound(n);
  for (const auto& f : sol.flows)
    if (f.to >= 0 && f.from >= 0 && f.count > 0) inbound[f.to].push_back(f.from);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return sol.columns[a].tl < sol.columns[b].tl;
  });

  std::vector<char> done(n, 0);
  for (int idx : order) {
    const Column& col = sol.columns[idx];
    int start = col.tl;
    for (int pre : inbound[idx]) {
      if (!done[pre]) continue;  // flows only come from earlier tours
      start = std::max(start, out.tour_return[pre]);
    }
    if (start > col.tl) out.postponed = true;
    out.tour_start[idx] = start;
    int t = start;
    int loc = inst.depot;
    for (int task : col.route) {
      const Task& tk = inst.tasks[task];
      t += scenario.at(loc, tk.location, inst.bins.bin_of(t));
      t = std::max(t, tk.es) + tk.p(col.profile);
      out.task_finish[task] = t;
      loc = tk.location;
    }
    t += scenario.at(loc, inst.depot, inst.bins.bin_of(t));
    out.tour_return[idx] = t;
    done[idx] = 1;
  }
  return out;
}

EvalMetrics evaluate(const Instance& inst, const Solution& sol,
                     int n_scenarios, std::uint64_t seed) {
  EvalMetrics m;
  m.scenarios = n_scenarios;
  Rng rng(seed);
  int n_tasks = inst.n_tasks();
  std::vector<long> ontime(n_tasks, 0);
  double total = 0.0, total_nopen = 0.0;
  int max_delay = 0;
  std::vector<long> hist(64, 0);
  for (int s = 0; s < n_scenarios; ++s) {
    Scenario sc = sample_scenario(inst, rng);
    ExecutedPlan ex = execute_plan(inst, sol, sc);
    double obj = 0.0, obj_np = 0.0;
    for (const auto& t : inst.tasks) {
      int fin = ex.task_finish[t.id];
      if (fin < 0) continue;  // uncovered: instance-infeasible plan
      double base = t.weight * (fin - t.ef);
      obj_np += base;
      int delay = std::max(0, fin - t.lf);
      obj += base + t.weight * double(delay) * double(delay);
      if (fin <= t.lf) ++ontime[t.id];
      max_delay = std::max(max_delay, delay);
      if (delay < static_cast<int>(hist.size())) ++hist[delay];
    }
    total += obj;
    total_nopen += obj_np;
  }
  m.objective = n_scenarios > 0 ? total / n_scenarios : 0.0;
  m.objective_no_penalty = n_scenarios > 0 ? total_nopen / n_scenarios : 0.0;
  double mean = 0.0;
  double minv = n_tasks > 0 ? 1.0 : 0.0;
  for (int i = 0; i < n_tasks; ++i) {
    double sl = n_scenarios > 0 ? double(ontime[i]) / n_scenarios : 1.0;
    mean += sl;
    minv = std::min(minv, sl);
  }
  mean = n_tasks > 0 ? mean / n_tasks : 1.0;
  double var = 0.0;
  for (int i = 0; i < n_tasks; ++i) {
    double sl = n_scenarios > 0 ? double(ontime[i]) / n_scenarios : 1.0;
    var += (sl - mean) * (sl - mean);
  }
  m.sl_mean = mean;
  m.sl_std = n_tasks > 0 ? std::sqrt(var / n_tasks) : 0.0;
  m.sl_min = minv;
  hist.resize(std::max(max_delay + 1, 1));
  m.delay_histogram = hist;
  return m;
}

VssEvpiResult vss_evpi(const Instance& inst, const Solution& stochastic,
                       const Solution* mean_solution, int n_scenarios,
                       int n_evpi_scenarios, std::uint64_t seed,
                       const SolveConfig& pi_cfg) {
  VssEvpiResult res;
  EvalMetrics stoch = evaluate(inst, stochastic, n_scenarios, seed);
  if (mean_solution) {
    EvalMetrics mean = evaluate(inst, *mean_solution, n_scenarios, seed);
    res.vss = mean.objective - stoch.objective;
  } else {
    res.vss = 0.0;
  }

  // perfect information: re-optimize per scenario with the realized travel
  // times as point masses and hard extended windows
  int n_pi = std::min(n_evpi_scenarios, n_scenarios);
  Rng rng(seed);
  double pi_total = 0.0;
  double stoch_total = 0.0;
  int used = 0;
  for (int s = 0; s < n_pi; ++s) {
    Scenario sc = sample_scenario(inst, rng);
    ExecutedPlan ex = execute_plan(inst, stochastic, sc);
    double obj = 0.0;
    for (const auto& t : inst.tasks) {
      int fin = ex.task_finish[t.id];
      if (fin < 0) continue;
      int delay = std::max(0, fin - t.lf);
      obj += t.weight * ((fin - t.ef) + double(delay) * double(delay));
    }
    Instance pi = inst;
    for (int a = 0; a < inst.n_locations; ++a)
      for (int b = 0; b < inst.n_locations; ++b) {
        if (a == b) continue;
        for (int k = 0; k < inst.edges.n_bins; ++k)
          pi.edges.travel[a * inst.n_locations + b][k] =
              DiscreteDistribution::point(sc.at(a, b, k));
      }
    SolveConfig cfg = pi_cfg;
    cfg.hard_windows_only = true;
    SolveResult r = solve(pi, cfg);
    if (!r.feasible() || !r.incumbent) continue;
    pi_total += r.incumbent->objective;
    stoch_total += obj;
    ++used;
  }
  if (used > 0) {
    res.evpi = (stoch_total - pi_total) / used;
    res.available = true;
  } else if (mean_solution) {
    res.available = true;
  }
  return res;
}

SaaResult saa_scenario_count(
    const std::vector<std::pair<const Instance*, const Solution*>>& plans,
    int start_n, int batches, std::uint64_t seed, int max_n) {
  constexpr double kZ975 = 1.959963984540054;  // N(0,1) quantile at 0.975
  SaaResult out;
  for (int n = start_n; n <= max_n; n += 50) {
    SaaStep step;
    step.n = n;
    bool ok = true;
    for (std::size_t p = 0; p < plans.size(); ++p) {
      const Instance& inst = *plans[p].first;
      const Solution& sol = *plans[p].second;
      std::vector<double> batch_means;
      for (int m = 0; m < batches; ++m) {
        std::uint64_t s = seed + 1000003ULL * (p + 1) + 7919ULL * m + n;
        batch_means.push_back(evaluate(inst, sol, n, s).objective);
      }
      double mean = std::accumulate(batch_means.begin(), batch_means.end(), 0.0) /
                    batches;
      double var = 0.0;
      for (double v : batch_means) var += (v - mean) * (v - mean);
      double sd = std::sqrt(var / (batches - 1));
      double ci = kZ975 * sd / std::sqrt(double(batches));
      double cap = std::max(0.05 * mean, 0.5);
      step.max_rel_std = std::max(step.max_rel_std, cap > 0 ? sd / cap : 0.0);
      step.max_rel_ci = std::max(step.max_rel_ci, cap > 0 ? ci / cap : 0.0);
      if (sd > cap || ci > cap) ok = false;
    }
    step.accepted = ok;
    out.steps.push_back(step);
    if (ok) {
      out.n_star = n;
      return out;
    }
  }
  out.n_star = max_n;
  return out;
}

}  // namespace tfr
