#include "tfr/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tfr {

int EdgeDistributions::min_travel(int from, int to) const {
  int m = travel[from * n_locations + to][0].min_time();
  for (int b = 1; b < n_bins; ++b)
    m = std::min(m, travel[from * n_locations + to][b].min_time());
  return m;
}

int EdgeDistributions::max_travel(int from, int to) const {
  int m = travel[from * n_locations + to][0].max_time();
  for (int b = 1; b < n_bins; ++b)
    m = std::max(m, travel[from * n_locations + to][b].max_time());
  return m;
}

int Instance::time_ub() const {
  int lfe = 0;
  for (const auto& t : tasks) lfe = std::max(lfe, t.lf_e);
  int back = 0;
  for (const auto& t : tasks)
    back = std::max(back, edges.max_travel(t.location, depot));
  return lfe + back + 1;
}

std::vector<int> Instance::profile_tasks(int q) const {
  std::vector<int> out;
  for (const auto& t : tasks)
    if (t.compatible(q)) out.push_back(t.id);
  return out;
}

void Instance::finalize() {
  for (auto& t : tasks) {
    int pmin = -1;
    for (const auto& [q, p] : t.exec_time)
      if (pmin < 0 || p < pmin) pmin = p;
    t.ef = t.es + (pmin < 0 ? 0 : pmin);
  }
  compositions.clear();
  compositions.reserve(profiles.size());
  for (const auto& p : profiles)
    compositions.push_back(enumerate_skill_compositions(p, skill_levels));
  validate();
}

void Instance::validate() const {
  if (bins.horizon <= 0 || bins.bin_length <= 0 ||
      bins.horizon % bins.bin_length != 0)
    throw std::invalid_argument("bins: horizon not an equal-length partition");
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("instance: alpha outside (0,1]");
  if (gamma <= 0.0 || gamma > 1.0)
    throw std::invalid_argument("instance: gamma outside (0,1]");
  if (depot < 0 || depot >= n_locations)
    throw std::invalid_argument("instance: depot location out of range");
  if (static_cast<int>(workforce.available.size()) != skill_levels)
    throw std::invalid_argument("workforce: level count mismatch");
  for (int n : workforce.available)
    if (n < 0) throw std::invalid_argument("workforce: negative N^D");
  for (const auto& p : profiles) {
    if (static_cast<int>(p.xi.size()) != skill_levels)
      throw std::invalid_argument("profile: xi level count mismatch");
    for (std::size_t k = 1; k < p.xi.size(); ++k)
      if (p.xi[k] > p.xi[k - 1])
        throw std::invalid_argument("profile: xi not non-increasing");
    if (p.xi.empty() || p.xi[0] < 1)
      throw std::invalid_argument("profile: xi_1 < 1");
  }
  for (const auto& t : tasks) {
    if (!(t.es <= t.lf && t.lf <= t.lf_e))
      throw std::invalid_argument("task: ES <= LF <= LF_e violated");
    if (t.weight < 0) throw std::invalid_argument("task: negative weight");
    if (t.exec_time.empty())
      throw std::invalid_argument("task: no compatible profile (Q_i empty)");
    for (const auto& [q, p] : t.exec_time) {
      if (q < 0 || q >= n_profiles())
        throw std::invalid_argument("task: unknown profile id");
      if (p <= 0) throw std::invalid_argument("task: exec time not positive");
    }
    if (t.location < 0 || t.location >= n_locations)
      throw std::invalid_argument("task: location out of range");
  }
  if (edges.n_locations != n_locations || edges.n_bins != bins.count())
    throw std::invalid_argument("edges: dimension mismatch");
  for (int i = 0; i < n_locations; ++i)
    for (int j = 0; j < n_locations; ++j) {
      if (i == j) continue;
      if (edges.det(i, j) < 0)
        throw std::invalid_argument("edges: negative deterministic time");
      for (int b = 0; b < edges.n_bins; ++b) {
        const auto& d = edges.dist(i, j, b);
        if (d.empty()) throw std::invalid_argument("edges: missing distribution");
        if (d.min_time() < edges.det(i, j))
          throw std::invalid_argument("edges: negative delay");
      }
    }
}

namespace {
void enumerate_rec(const std::vector<int>& xi, int level, int remaining,
                   SkillComposition& cur, std::vector<SkillComposition>& out) {
  int levels = static_cast<int>(xi.size());
  if (level == levels - 1) {
    cur[level] = remaining;
    // check cumulative requirements (Eq. 2)
    int suffix = 0;
    for (int k = levels - 1; k >= 0; --k) {
      suffix += cur[k];
      if (suffix < xi[k]) return;
    }
    out.push_back(cur);
    return;
  }
  for (int take = 0; take <= remaining; ++take) {
    cur[level] = take;
    enumerate_rec(xi, level + 1, remaining - take, cur, out);
  }
  cur[level] = 0;
}
}  // namespace

std::vector<SkillComposition> enumerate_skill_compositions(const Profile& p,
                                                           int levels) {
  std::vector<SkillComposition> out;
  SkillComposition cur(levels, 0);
  enumerate_rec(p.xi, 0, p.team_size(), cur, out);
  return out;
}

std::optional<PropagationResult> propagate_finish(
    const DiscreteDistribution& prev_finish, int prev_finish_gamma,
    int from_loc, int to_loc, int exec_time, int es_j, int lf_e_j,
    const TimeBins& bins, const EdgeDistributions& edges, double gamma) {
  int bin = bins.bin_of(prev_finish.median());
  const DiscreteDistribution& travel = edges.dist(from_loc, to_loc, bin);

  DiscreteDistribution arrival = prev_finish.convolve(travel);
  DiscreteDistribution finish =
      arrival.truncate_left(es_j).shifted(exec_time);
  if (finish.max_time() > lf_e_j) return std::nullopt;

  int gamma_finish =
      std::max(prev_finish_gamma + travel.quantile(gamma), es_j) + exec_time;
  return PropagationResult{std::move(finish), gamma_finish};
}

bool Column::contains(int task) const {
  return std::find(route.begin(), route.end(), task) != route.end();
}

int Column::finish_gamma_of(int task) const {
  for (std::size_t i = 0; i < route.size(); ++i)
    if (route[i] == task) return finish_gamma[i];
  throw std::out_of_range("column: task not on route");
}

int Column::occupancy(const Instance& inst, int k, int tau) const {
  if (!occupies(tau)) return 0;
  if (artificial)
    return composition ? (*composition)[k] : inst.workforce.cumulative(k);
  if (composition) return (*composition)[k];
  return inst.profiles[profile].xi[k];
}

int Column::occupancy_cumulative(const Instance& inst, int k, int tau) const {
  if (!occupies(tau)) return 0;
  if (artificial) return inst.workforce.cumulative(k);
  return inst.profiles[profile].xi[k];
}

std::optional<Column> build_column(const Instance& inst,
                                   const std::vector<int>& route, int profile,
                                   int tl) {
  Column col;
  col.route = route;
  col.profile = profile;
  col.tl = tl;

  DiscreteDistribution f = DiscreteDistribution::point(tl);
  int fg = tl;
  for (int v : route) {
    const Task& t = inst.tasks[v];
    if (!t.compatible(profile)) return std::nullopt;
    int from = col.finish.empty() ? inst.depot
                                  : inst.tasks[route[col.finish.size() - 1]].location;
    auto res = propagate_finish(f, fg, from, t.location, t.p(profile), t.es,
                                t.lf_e, inst.bins, inst.edges, inst.gamma);
    if (!res) return std::nullopt;
    f = res->finish;
    fg = res->finish_gamma;
    col.finish.push_back(f);
    col.finish_gamma.push_back(fg);
  }
  // return leg: the bin of the last task's median finish, gamma travel
  int last_loc = inst.tasks[route.back()].location;
  int bin = inst.bins.bin_of(f.median());
  col.tr = fg + inst.edges.quantile(last_loc, inst.depot, bin, inst.gamma);
  col.cost = route_cost_unshifted(col, inst);
  col.cost_shifted = route_cost(col, inst);
  return col;
}

double quadratic_penalty_expectation(const DiscreteDistribution& f, int lf) {
  double e = 0.0;
  const auto& ts = f.times();
  const auto& ps = f.probs();
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (ts[i] > lf) e += ps[i] * double(ts[i] - lf) * double(ts[i] - lf);
  return e;
}

double route_cost(const Column& col, const Instance& inst) {
  double c = 0.0;
  for (std::size_t i = 0; i < col.route.size(); ++i) {
    const Task& t = inst.tasks[col.route[i]];
    c += t.weight * (col.finish[i].expectation() - t.ef +
                     quadratic_penalty_expectation(col.finish[i], t.lf));
  }
  return c;
}

double route_cost_unshifted(const Column& col, const Instance& inst) {
  double c = 0.0;
  for (std::size_t i = 0; i < col.route.size(); ++i) {
    const Task& t = inst.tasks[col.route[i]];
    c += t.weight * (col.finish[i].expectation() +
                     quadratic_penalty_expectation(col.finish[i], t.lf));
  }
  return c;
}

bool check_route_feasibility(const Column& col, const Instance& inst,
                             double alpha) {
  for (std::size_t i = 0; i < col.route.size(); ++i) {
    const Task& t = inst.tasks[col.route[i]];
    if (alpha > 0 && col.finish[i].cdf(t.lf) + 1e-9 < alpha) return false;
    if (col.finish[i].max_time() > t.lf_e) return false;
  }
  return true;
}

}  // namespace tfr
