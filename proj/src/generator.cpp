#include "tfr/generator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace tfr {

namespace {

// Aircraft class/mode table. Each class supports slow/intermediate/fast
// formations; faster modes need more (and higher-skilled) workers and less
// time. Times in 2-minute steps. Constants documented in the README.
struct ModeSpec {
  std::vector<int> xi;  // cumulative requirement per level (K = 3)
  int exec_steps;
};
constexpr int kClasses = 3;
const ModeSpec kModeTable[kClasses][3] = {
    // slow              intermediate        fast
    {{{2, 1, 0}, 6}, {{3, 2, 0}, 5}, {{4, 2, 1}, 3}},   // small
    {{{3, 2, 0}, 8}, {{4, 2, 1}, 6}, {{5, 3, 1}, 4}},   // medium
    {{{4, 2, 1}, 10}, {{5, 3, 1}, 7}, {{6, 4, 2}, 5}},  // large
};

std::vector<int> modes_of(ModeSet m) {
  switch (m) {
    case ModeSet::Intermediate: return {1};
    case ModeSet::SlowFast: return {0, 2};
    default: return {0, 1, 2};
  }
}

// Truncated geometric pmf on {0..max_delay} with the given mean, found by
// bisection on the ratio parameter.
std::vector<double> geometric_delays(double mean, int max_delay) {
  auto mean_of = [&](double rho) {
    double num = 0, den = 0, w = 1;
    for (int d = 0; d <= max_delay; ++d, w *= rho) {
      num += d * w;
      den += w;
    }
    return num / den;
  };
  double lo = 1e-9, hi = 0.999999;
  mean = std::clamp(mean, 0.01, mean_of(hi));
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (mean_of(mid) < mean ? lo : hi) = mid;
  }
  double rho = 0.5 * (lo + hi);
  std::vector<double> pmf(max_delay + 1);
  double w = 1, den = 0;
  for (int d = 0; d <= max_delay; ++d, w *= rho) den += w;
  w = 1;
  for (int d = 0; d <= max_delay; ++d, w *= rho) pmf[d] = w / den;
  return pmf;
}

}  // namespace

ModeSet parse_mode_set(const std::string& s) {
  if (s == "i") return ModeSet::Intermediate;
  if (s == "sf") return ModeSet::SlowFast;
  if (s == "sif") return ModeSet::SlowIntermediateFast;
  throw std::invalid_argument("mode set must be one of: i, sf, sif");
}

Instance generate_instance(const GeneratorParams& params) {
  if (params.horizon_minutes != 60 && params.horizon_minutes != 90 &&
      params.horizon_minutes != 120)
    throw std::invalid_argument("horizon must be 60, 90 or 120 minutes");
  if (params.flights_per_hour != 10 && params.flights_per_hour != 20 &&
      params.flights_per_hour != 30)
    throw std::invalid_argument("flights per hour must be 10, 20 or 30");
  if (params.worker_strength < 0.1 - 1e-9 || params.worker_strength > 0.9 + 1e-9)
    throw std::invalid_argument("worker strength must lie in [0.1, 0.9]");

  Rng rng(params.seed * 0x100003ULL + 17);
  Instance inst;
  inst.step_minutes = 2;
  inst.bins.horizon = params.horizon_minutes / 2;
  // 15-minute bins are not an equal-cardinality partition of a 2-minute
  // grid; 10-minute bins (5 steps) divide all three horizon lengths.
  inst.bins.bin_length = 5;
  inst.alpha = params.alpha;
  inst.gamma = params.gamma;
  inst.skill_levels = 3;

  const std::vector<int> modes = modes_of(params.modes);

  // global profile set: one per (class, mode) with distinct xi
  std::map<std::vector<int>, int> xi_to_profile;
  auto profile_of = [&](const std::vector<int>& xi) {
    auto it = xi_to_profile.find(xi);
    if (it != xi_to_profile.end()) return it->second;
    Profile p;
    p.id = static_cast<int>(inst.profiles.size());
    p.xi = xi;
    inst.profiles.push_back(p);
    xi_to_profile[xi] = p.id;
    return p.id;
  };

  int n_tasks = params.flights_per_hour * params.horizon_minutes / 60;
  // gates on a coordinate ring around the depot
  int n_gates = std::max(6, n_tasks / 2);
  inst.n_locations = n_gates + 1;
  inst.depot = 0;

  std::vector<std::pair<int, int>> coords(inst.n_locations);
  coords[0] = {0, 0};
  for (int g = 1; g <= n_gates; ++g)
    coords[g] = {rng.uniform_int(-4, 4), rng.uniform_int(-4, 4)};

  int horizon = inst.bins.horizon;
  for (int i = 0; i < n_tasks; ++i) {
    Task t;
    t.id = i;
    t.location = 1 + rng.uniform_int(0, n_gates - 1);
    int klass = rng.uniform_int(0, kClasses - 1);
    int p_slowest = 0;
    for (int m : modes) {
      const ModeSpec& spec = kModeTable[klass][m];
      t.exec_time[profile_of(spec.xi)] = spec.exec_steps;
      p_slowest = std::max(p_slowest, spec.exec_steps);
    }
    int latest_es = std::max(2, horizon - p_slowest - 8);
    t.es = rng.uniform_int(2, latest_es);
    t.lf = std::min(t.es + p_slowest + rng.uniform_int(2, 5), horizon - 1);
    t.lf_e = t.lf + 5;  // 5 time steps after the latest finish
    t.weight = rng.uniform_int(1, 3);
    inst.tasks.push_back(t);
  }

  // travel distributions: deterministic part from grid distance, delay pmf a
  // truncated geometric whose mean grows 20% per successive bin
  int n_bins = inst.bins.count();
  inst.edges.n_locations = inst.n_locations;
  inst.edges.n_bins = n_bins;
  inst.edges.t_det.assign(inst.n_locations * inst.n_locations, 0);
  inst.edges.travel.assign(inst.n_locations * inst.n_locations, {});
  for (int a = 0; a < inst.n_locations; ++a)
    for (int b = 0; b < inst.n_locations; ++b) {
      if (a == b) continue;
      int manhattan = std::abs(coords[a].first - coords[b].first) +
                      std::abs(coords[a].second - coords[b].second);
      int det = std::max(1, (manhattan + 2) / 3);
      inst.edges.t_det[a * inst.n_locations + b] = det;
      int max_delay = rng.uniform_int(1, 4);  // support size 2..5
      double base_mean = 0.3 + 0.7 * rng.uniform_real();
      std::vector<DiscreteDistribution> per_bin;
      for (int k = 0; k < n_bins; ++k) {
        double mean = base_mean * std::pow(1.2, k);
        std::vector<double> pmf = geometric_delays(mean, max_delay);
        std::vector<std::pair<int, double>> pairs;
        for (int d = 0; d <= max_delay; ++d) pairs.emplace_back(det + d, pmf[d]);
        per_bin.push_back(DiscreteDistribution::from_pairs(pairs));
      }
      inst.edges.travel[a * inst.n_locations + b] = std::move(per_bin);
    }

  // keep ES reachable from the depot
  for (auto& t : inst.tasks) {
    int min_tt = inst.edges.min_travel(inst.depot, t.location);
    if (t.es < min_tt) {
      t.es = min_tt;
      t.lf = std::max(t.lf, t.es + 1);
      t.lf_e = t.lf + 5;
    }
  }

  // Reference workforce: every task started at its earliest possible time
  // with the fastest (largest-team) mode; peak simultaneous cumulative
  // requirement per level, under worst-case travel.
  int time_ub = horizon + 32;
  std::vector<std::vector<int>> load(3, std::vector<int>(time_ub + 1, 0));
  for (const auto& t : inst.tasks) {
    int best_q = -1, best_p = 0;
    for (const auto& [q, p] : t.exec_time)
      if (best_q < 0 || inst.profiles[q].xi[0] > inst.profiles[best_q].xi[0]) {
        best_q = q;
        best_p = p;
      }
    int tl = std::max(0, t.es - inst.edges.min_travel(inst.depot, t.location));
    int finish = t.es + best_p;
    int tr = std::min(time_ub,
                      finish + inst.edges.max_travel(t.location, inst.depot));
    for (int tau = tl; tau <= tr; ++tau)
      for (int k = 0; k < 3; ++k) load[k][tau] += inst.profiles[best_q].xi[k];
  }
  std::vector<int> peak(3, 0);
  for (int k = 0; k < 3; ++k)
    peak[k] = *std::max_element(load[k].begin(), load[k].end());

  std::vector<int> cumulative(3);
  for (int k = 0; k < 3; ++k)
    cumulative[k] = static_cast<int>(std::ceil(params.worker_strength * peak[k]));
  for (int k = 1; k < 3; ++k)
    cumulative[k] = std::min(cumulative[k], cumulative[k - 1]);
  inst.workforce.available.assign(3, 0);
  for (int k = 0; k < 3; ++k) {
    int above = k + 1 < 3 ? cumulative[k + 1] : 0;
    inst.workforce.available[k] = cumulative[k] - above;
  }

  inst.finalize();
  return inst;
}

}  // namespace tfr
