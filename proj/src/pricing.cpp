#include "tfr/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace tfr {

namespace {

bool arc_feasible_some_t(const Instance& inst, int profile, const Task& ti,
                         const Task& tj) {
  // Arc (i,j) stays unless for every candidate finish time t of i the direct
  // extension would violate the chance constraint or the extended window.
  int p_i = ti.p(profile);
  int p_j = tj.p(profile);
  for (int t = ti.es + p_i; t <= ti.lf_e + p_i; ++t) {
    int bin = inst.bins.bin_of(t);
    const auto& travel = inst.edges.dist(ti.location, tj.location, bin);
    bool viol = t + travel.max_time() > tj.lf_e - p_j;
    if (inst.alpha > 0)
      viol = viol || t + travel.quantile(inst.alpha) > tj.lf - p_j;
    if (!viol) return true;
  }
  return false;
}

bool arc_split_removable(const Instance& inst, const Task& ti, const Task& tj) {
  // Rule (15): a gap long enough to return to the depot in every bin means
  // the arc only ever splits a route into two independent feasible routes.
  int gap = tj.es - ti.lf_e;
  if (gap < 0) return false;
  for (int k = 0; k < inst.bins.count(); ++k) {
    int via = inst.edges.quantile(ti.location, inst.depot, k, inst.gamma) +
              inst.edges.quantile(inst.depot, tj.location, k, inst.gamma);
    if (gap < via) return false;
  }
  return true;
}

}  // namespace

PricingGraph build_pricing_graph(const Instance& inst, int profile,
                                 const NodeFilters* filters) {
  PricingGraph g;
  g.profile = profile;
  g.index_of.assign(inst.n_tasks(), -1);
  for (const auto& t : inst.tasks) {
    if (!t.compatible(profile)) continue;
    if (filters && filters->removed(t.id)) continue;
    g.index_of[t.id] = static_cast<int>(g.tasks.size());
    g.tasks.push_back(t.id);
  }
  int n = static_cast<int>(g.tasks.size());
  g.arc.assign(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const Task& ti = inst.tasks[g.tasks[a]];
      const Task& tj = inst.tasks[g.tasks[b]];
      if (!arc_feasible_some_t(inst, profile, ti, tj)) continue;
      if (arc_split_removable(inst, ti, tj)) continue;
      g.arc[a][b] = 1;
    }
  return g;
}

std::vector<int> feasible_leave_times(const Instance& inst, int task,
                                      int profile,
                                      const NodeFilters* filters) {
  std::vector<int> out;
  const Task& t = inst.tasks[task];
  if (!t.compatible(profile)) return out;
  int cap =
      t.lf - t.p(profile) - inst.edges.min_travel(inst.depot, t.location);
  for (int tl = 0; tl <= cap; ++tl) {
    auto prop = propagate_finish(DiscreteDistribution::point(tl), tl,
                                 inst.depot, t.location, t.p(profile), t.es,
                                 t.lf_e, inst.bins, inst.edges, inst.gamma);
    if (!prop) continue;
    if (inst.alpha > 0 && prop->finish.cdf(t.lf) + 1e-9 < inst.alpha) continue;
    if (filters && !filters->window_ok(task, prop->finish_gamma)) continue;
    out.push_back(tl);
  }
  return out;
}

namespace {

struct Label {
  int node = -1;  // position in graph.tasks
  int tl = 0;
  double cost = 0.0;
  double occ_delta_sum = 0.0;  // sum_k occ_k * sum_{tau=tl..fg} delta_{k,tau}
  std::vector<int> path;       // task ids
  DiscreteDistribution finish;
  int finish_gamma = 0;
  int median = 0;
  std::vector<char> task_res;   // per graph position, 1 = still visitable
  std::vector<double> cut_res;  // T_g per cut
  std::vector<int> tracked_pos; // matched prefix length per tracked column
  bool forbidden_prefix = false;
  bool dominated = false;
};

class Labeling {
 public:
  Labeling(const Instance& inst, const PricingGraph& graph,
           const DualSnapshot& duals, const std::vector<int>& occupancy,
           DominanceRule rule, const NodeFilters* filters,
           const PricingConfig& cfg, const std::set<int>& critical,
           const std::vector<std::vector<char>>* allowed_arc,
           PricingStats* stats)
      : inst_(inst),
        graph_(graph),
        duals_(duals),
        occ_(occupancy),
        xi_(inst.profiles[graph.profile].xi),
        rule_(rule),
        filters_(filters),
        cfg_(cfg),
        critical_(critical),
        allowed_arc_(allowed_arc),
        stats_(stats) {
    n_ = static_cast<int>(graph.tasks.size());
    node_labels_.assign(n_, {});
  }

  std::vector<SinkLabel> run(const std::vector<std::pair<int, int>>* initial) {
    if (initial) {
      for (const auto& [pos, tl] : *initial) {
        auto lab = build_initial(pos, tl);
        if (lab) insert(std::move(*lab));
      }
    } else {
      for (int pos = 0; pos < n_; ++pos) {
        const Task& t = inst_.tasks[graph_.tasks[pos]];
        int cap = t.lf - t.p(graph_.profile) -
                  inst_.edges.min_travel(inst_.depot, t.location);
        for (int tl = 0; tl <= cap; ++tl) {
          auto lab = build_initial(pos, tl);
          if (lab) insert(std::move(*lab));
        }
      }
    }
    while (!queue_.empty()) {
      std::size_t idx = queue_.front();
      queue_.pop_front();
      if (pool_[idx].dominated) continue;
      to_sink(pool_[idx]);
      for (int to = 0; to < n_; ++to) {
        if (!graph_.arc[pool_[idx].node][to]) continue;
        if (allowed_arc_ && !(*allowed_arc_)[pool_[idx].node][to]) continue;
        extend(pool_[idx], to);
      }
    }
    return std::move(sinks_);
  }

  // Follows a full task-id path from a depot leave time; used by the test
  // probes. Fails where any extension would be infeasible.
  std::optional<Label> build_path(const std::vector<int>& path, int tl) {
    if (path.empty()) return std::nullopt;
    int pos0 = graph_.index_of[path[0]];
    if (pos0 < 0) return std::nullopt;
    auto lab = build_initial(pos0, tl);
    if (!lab) return std::nullopt;
    lab->occ_delta_sum = occ_delta(lab->tl, lab->finish_gamma);
    for (std::size_t i = 1; i < path.size(); ++i) {
      int pos = graph_.index_of[path[i]];
      if (pos < 0) return std::nullopt;
      auto nl = make_extension(*lab, pos);
      if (!nl) return std::nullopt;
      lab = std::move(nl);
      lab->occ_delta_sum = occ_delta(lab->tl, lab->finish_gamma);
    }
    return lab;
  }

  bool label_dominates(const Label& a, const Label& b) const {
    return dominates(a, b);
  }

  std::optional<Label> build_initial(int pos, int tl) {
    const Task& t = inst_.tasks[graph_.tasks[pos]];
    auto prop = propagate_finish(DiscreteDistribution::point(tl), tl,
                                 inst_.depot, t.location, t.p(graph_.profile),
                                 t.es, t.lf_e, inst_.bins, inst_.edges,
                                 inst_.gamma);
    if (!prop) return std::nullopt;
    if (inst_.alpha > 0 && prop->finish.cdf(t.lf) + 1e-9 < inst_.alpha)
      return std::nullopt;
    if (filters_ && !filters_->window_ok(t.id, prop->finish_gamma))
      return std::nullopt;

    Label lab;
    lab.node = pos;
    lab.tl = tl;
    lab.path = {t.id};
    lab.finish = prop->finish;
    lab.finish_gamma = prop->finish_gamma;
    lab.median = lab.finish.median();
    lab.cost = t.weight * (lab.finish.expectation() +
                           quadratic_penalty_expectation(lab.finish, t.lf)) -
               duals_.mu[t.id] - occ_delta(tl, lab.finish_gamma);
    for (const auto& row : duals_.tour_rows)
      if (tl <= row.tau_star && row.tau_star <= lab.finish_gamma)
        lab.cost -= row.dual;
    lab.task_res.assign(n_, 1);
    lab.task_res[pos] = 0;
    apply_resets(lab);
    lab.cut_res.assign(duals_.cuts.size(), 0.0);
    for (std::size_t g = 0; g < duals_.cuts.size(); ++g)
      apply_cut(lab, g, t.id, tl - 1, lab.finish_gamma);
    init_tracked(lab);
    return lab;
  }

 private:
  const Instance& inst_;
  const PricingGraph& graph_;
  const DualSnapshot& duals_;
  const std::vector<int>& occ_;
  const std::vector<int>& xi_;
  DominanceRule rule_;
  const NodeFilters* filters_;
  const PricingConfig& cfg_;
  const std::set<int>& critical_;
  const std::vector<std::vector<char>>* allowed_arc_;
  PricingStats* stats_;

  int n_ = 0;
  std::deque<Label> pool_;
  std::vector<std::vector<std::size_t>> node_labels_;
  std::deque<std::size_t> queue_;
  std::vector<SinkLabel> sinks_;

  double occ_delta(int a, int b) const {
    double s = 0.0;
    for (std::size_t k = 0; k < occ_.size(); ++k)
      if (occ_[k] != 0) s += occ_[k] * duals_.delta_range(k, a, b);
    return s;
  }

  double xi_weighted_u(const ChvatalGomoryCut& cut, int a, int b) const {
    if (cut.u_work.empty()) return 0.0;
    double s = 0.0;
    for (std::size_t k = 0; k < xi_.size(); ++k) {
      if (xi_[k] == 0) continue;
      const auto& row = cut.u_work[k];
      int hi = std::min(b, static_cast<int>(row.size()) - 1);
      for (int t = std::max(a, 0); t <= hi; ++t) s += xi_[k] * row[t];
    }
    return s;
  }

  // Cut resource extension: integer carry goes into the cost weighted by the
  // cut dual, the fractional part stays on the label.
  void apply_cut(Label& lab, std::size_t g, int arrived_task, int fg_prev,
                 int fg_new) {
    const auto& ref = duals_.cuts[g];
    double inc = (arrived_task >= 0 ? ref.cut->u_task[arrived_task] : 0.0) +
                 xi_weighted_u(*ref.cut, fg_prev + 1, fg_new);
    double total = lab.cut_res[g] + inc;
    double carry = std::floor(total + 1e-9);
    lab.cost += carry * ref.psi;
    lab.cut_res[g] = std::max(total - carry, 0.0);
  }

  // Tasks that can no longer be reached are marked visitable again; this
  // strengthens dominance without affecting feasibility.
  void apply_resets(Label& lab) const {
    int fmax = lab.finish.max_time();
    int from = inst_.tasks[lab.path.back()].location;
    for (int pos = 0; pos < n_; ++pos) {
      if (pos == lab.node || lab.task_res[pos] == 1) continue;
      const Task& t = inst_.tasks[graph_.tasks[pos]];
      int p = t.p(graph_.profile);
      bool chance = inst_.alpha > 0;
      bool beyond_lfe = true, beyond_lf = chance;
      for (int k = 0; k < inst_.bins.count() && (beyond_lfe || beyond_lf);
           ++k) {
        const auto& travel = inst_.edges.dist(from, t.location, k);
        if (fmax + travel.max_time() <= t.lf_e - p) beyond_lfe = false;
        if (chance && fmax + travel.quantile(inst_.alpha) <= t.lf - p)
          beyond_lf = false;
      }
      if (beyond_lfe || beyond_lf) lab.task_res[pos] = 1;
    }
  }

  void init_tracked(Label& lab) {
    if (!filters_ || filters_->tracked.empty()) return;
    lab.tracked_pos.assign(filters_->tracked.size(), -1);
    for (std::size_t f = 0; f < filters_->tracked.size(); ++f) {
      const auto& tr = filters_->tracked[f];
      if (tr.profile == graph_.profile && tr.tl == lab.tl &&
          !tr.route.empty() && tr.route[0] == lab.path[0])
        lab.tracked_pos[f] = 1;
    }
    update_forbidden_prefix(lab);
  }

  void step_tracked(Label& lab, int new_task) {
    if (lab.tracked_pos.empty()) return;
    for (std::size_t f = 0; f < lab.tracked_pos.size(); ++f) {
      int pos = lab.tracked_pos[f];
      if (pos < 0) continue;
      const auto& tr = filters_->tracked[f];
      if (pos < static_cast<int>(tr.route.size()) && tr.route[pos] == new_task)
        lab.tracked_pos[f] = pos + 1;
      else
        lab.tracked_pos[f] = -1;
    }
    update_forbidden_prefix(lab);
  }

  void update_forbidden_prefix(Label& lab) const {
    lab.forbidden_prefix = false;
    for (std::size_t f = 0; f < lab.tracked_pos.size(); ++f)
      if (lab.tracked_pos[f] == static_cast<int>(lab.path.size()))
        lab.forbidden_prefix = true;
  }

  bool dominates(const Label& a, const Label& b) const {
    if (a.forbidden_prefix) return false;
    if (a.finish_gamma != b.finish_gamma) return false;
    if (a.median != b.median) return false;
    if (rule_ == DominanceRule::Disaggregated && a.tl < b.tl) return false;

    double cost_a = a.cost;
    double cost_b = b.cost;
    if (rule_ == DominanceRule::Disaggregated) {
      cost_a += a.occ_delta_sum;
      cost_b += b.occ_delta_sum;
    }
    for (std::size_t g = 0; g < duals_.cuts.size(); ++g)
      if (a.cut_res[g] > b.cut_res[g] + 1e-9) cost_a += duals_.cuts[g].psi;
    if (cost_a > cost_b + 1e-9) return false;

    if (cfg_.use_dssr) {
      if (a.path.size() > b.path.size()) return false;
      for (int id : critical_) {
        int pos = graph_.index_of[id];
        if (pos >= 0 && a.task_res[pos] < b.task_res[pos]) return false;
      }
    } else {
      for (int pos = 0; pos < n_; ++pos)
        if (a.task_res[pos] < b.task_res[pos]) return false;
    }

    const Task& t = inst_.tasks[graph_.tasks[a.node]];
    return a.finish.dominates_stochastically(
        b.finish, t.es + t.p(graph_.profile), t.lf_e);
  }

  void insert(Label&& lab) {
    if (stats_) ++stats_->labels_created;
    lab.occ_delta_sum = occ_delta(lab.tl, lab.finish_gamma);
    if (cfg_.use_dominance) {
      auto& bucket = node_labels_[lab.node];
      for (std::size_t idx : bucket) {
        const Label& other = pool_[idx];
        if (!other.dominated && dominates(other, lab)) {
          if (stats_) ++stats_->labels_dominated;
          return;
        }
      }
      for (std::size_t idx : bucket) {
        Label& other = pool_[idx];
        if (!other.dominated && dominates(lab, other)) {
          other.dominated = true;
          if (stats_) ++stats_->labels_dominated;
        }
      }
    }
    int node = lab.node;
    pool_.push_back(std::move(lab));
    node_labels_[node].push_back(pool_.size() - 1);
    queue_.push_back(pool_.size() - 1);
  }

  void extend(const Label& lab, int to) {
    auto nl = make_extension(lab, to);
    if (nl) insert(std::move(*nl));
  }

  std::optional<Label> make_extension(const Label& lab, int to) {
    int task_id = graph_.tasks[to];
    bool in_path = std::find(lab.path.begin(), lab.path.end(), task_id) !=
                   lab.path.end();
    if (cfg_.use_dssr) {
      if (critical_.count(task_id) && (lab.task_res[to] == 0 || in_path))
        return std::nullopt;
    } else {
      if (lab.task_res[to] == 0 || in_path) return std::nullopt;
    }
    if (stats_) ++stats_->labels_extended;

    const Task& t = inst_.tasks[task_id];
    const Task& from_task = inst_.tasks[lab.path.back()];
    auto prop = propagate_finish(lab.finish, lab.finish_gamma,
                                 from_task.location, t.location,
                                 t.p(graph_.profile), t.es, t.lf_e, inst_.bins,
                                 inst_.edges, inst_.gamma);
    if (!prop) return std::nullopt;
    if (inst_.alpha > 0 && prop->finish.cdf(t.lf) + 1e-9 < inst_.alpha)
      return std::nullopt;
    if (filters_ && !filters_->window_ok(task_id, prop->finish_gamma))
      return std::nullopt;

    Label nl;
    nl.node = to;
    nl.tl = lab.tl;
    nl.path = lab.path;
    nl.path.push_back(task_id);
    nl.finish = prop->finish;
    nl.finish_gamma = prop->finish_gamma;
    nl.median = nl.finish.median();
    nl.cost = lab.cost +
              t.weight * (nl.finish.expectation() +
                          quadratic_penalty_expectation(nl.finish, t.lf)) -
              duals_.mu[task_id] -
              occ_delta(lab.finish_gamma + 1, nl.finish_gamma);
    for (const auto& row : duals_.tour_rows)
      if (lab.finish_gamma < row.tau_star && row.tau_star <= nl.finish_gamma)
        nl.cost -= row.dual;
    nl.task_res = lab.task_res;
    nl.task_res[to] = 0;
    apply_resets(nl);
    nl.cut_res = lab.cut_res;
    for (std::size_t g = 0; g < duals_.cuts.size(); ++g)
      apply_cut(nl, g, task_id, lab.finish_gamma, nl.finish_gamma);
    nl.tracked_pos = lab.tracked_pos;
    step_tracked(nl, task_id);
    return nl;
  }

  void to_sink(const Label& lab) {
    const Task& last = inst_.tasks[lab.path.back()];
    int bin = inst_.bins.bin_of(lab.median);
    int tr = lab.finish_gamma +
             inst_.edges.quantile(last.location, inst_.depot, bin, inst_.gamma);
    double cost = lab.cost - occ_delta(lab.finish_gamma + 1, tr);
    for (const auto& row : duals_.tour_rows)
      if (lab.finish_gamma < row.tau_star && row.tau_star <= tr)
        cost -= row.dual;
    if (!lab.cut_res.empty()) {
      Label tmp;
      tmp.cut_res = lab.cut_res;
      for (std::size_t g = 0; g < duals_.cuts.size(); ++g)
        apply_cut(tmp, g, -1, lab.finish_gamma, tr);
      cost += tmp.cost;
    }
    SinkLabel sl;
    if (!lab.tracked_pos.empty()) {
      for (std::size_t f = 0; f < lab.tracked_pos.size(); ++f) {
        const auto& tc = filters_->tracked[f];
        if (lab.tracked_pos[f] == static_cast<int>(tc.route.size())) {
          cost -= tc.sink_dual;
          sl.tracked_full.push_back(static_cast<int>(f));
        }
      }
    }
    sl.route = lab.path;
    sl.tl = lab.tl;
    sl.tr = tr;
    sl.cost = cost;
    sinks_.push_back(std::move(sl));
  }
};

struct InitialLabel {
  int pos;
  int tl;
  double cost;
};

std::vector<InitialLabel> initial_labels_sorted(
    const Instance& inst, const PricingGraph& graph, const DualSnapshot& duals,
    const std::vector<int>& occupancy, DominanceRule rule,
    const NodeFilters* filters, const PricingConfig& cfg) {
  Labeling probe(inst, graph, duals, occupancy, rule, filters, cfg, {},
                 nullptr, nullptr);
  std::vector<InitialLabel> out;
  for (int pos = 0; pos < static_cast<int>(graph.tasks.size()); ++pos) {
    int task = graph.tasks[pos];
    for (int tl : feasible_leave_times(inst, task, graph.profile, filters)) {
      auto lab = probe.build_initial(pos, tl);
      if (lab) out.push_back({pos, tl, lab->cost});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.pos != b.pos) return a.pos < b.pos;
    return a.tl < b.tl;
  });
  return out;
}

std::vector<std::vector<char>> delta_arc_mask(const PricingGraph& graph,
                                              const DualSnapshot& duals,
                                              int delta) {
  int n = static_cast<int>(graph.tasks.size());
  std::vector<std::vector<char>> mask(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a) {
    std::vector<int> outs;
    for (int b = 0; b < n; ++b)
      if (graph.arc[a][b]) outs.push_back(b);
    std::stable_sort(outs.begin(), outs.end(), [&](int x, int y) {
      double mx = duals.mu[graph.tasks[x]];
      double my = duals.mu[graph.tasks[y]];
      if (mx != my) return mx > my;
      return graph.tasks[x] < graph.tasks[y];
    });
    for (int i = 0; i < std::min<int>(delta, outs.size()); ++i)
      mask[a][outs[i]] = 1;
  }
  return mask;
}

int first_repeated_task(const std::vector<int>& route) {
  std::vector<int> seen;
  for (int v : route) {
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) return v;
    seen.push_back(v);
  }
  return -1;
}

}  // namespace

std::vector<SinkLabel> run_labeling(
    const Instance& inst, const PricingGraph& graph, const DualSnapshot& duals,
    const std::vector<int>& occupancy, DominanceRule rule,
    const NodeFilters* filters, const PricingConfig& cfg,
    const std::set<int>& critical,
    const std::vector<std::pair<int, int>>* initial,
    const std::vector<std::vector<char>>* allowed_arc, PricingStats* stats) {
  if (graph.tasks.empty()) return {};
  Labeling run(inst, graph, duals, occupancy, rule, filters, cfg, critical,
               allowed_arc, stats);
  return run.run(initial);
}

std::optional<PricedColumn> price_profile(const Instance& inst, int profile,
                                          const DualSnapshot& duals,
                                          DominanceRule rule,
                                          const NodeFilters* filters,
                                          const PricingConfig& cfg,
                                          PricingStats* stats) {
  PricingGraph graph = build_pricing_graph(inst, profile, filters);
  if (graph.tasks.empty()) return std::nullopt;

  const std::vector<SkillComposition>& comps = inst.compositions[profile];
  std::vector<int> occupancy;
  if (rule == DominanceRule::Disaggregated) {
    // one network per profile, priced with the lexicographically smallest
    // composition; the best composition is chosen over the sink labels
    occupancy.assign(comps.front().begin(), comps.front().end());
  } else {
    occupancy = inst.profiles[profile].xi;
  }

  auto initial =
      initial_labels_sorted(inst, graph, duals, occupancy, rule, filters, cfg);
  if (initial.empty()) return std::nullopt;

  std::vector<std::vector<std::pair<int, int>>> containers;
  if (cfg.use_containers) {
    for (std::size_t i = 0; i < initial.size();
         i += static_cast<std::size_t>(cfg.container_size)) {
      std::vector<std::pair<int, int>> c;
      for (std::size_t j = i;
           j < std::min(i + cfg.container_size, initial.size()); ++j)
        c.push_back({initial[j].pos, initial[j].tl});
      containers.push_back(std::move(c));
    }
  } else {
    std::vector<std::pair<int, int>> all;
    for (const auto& il : initial) all.push_back({il.pos, il.tl});
    containers.push_back(std::move(all));
  }

  std::vector<const std::vector<std::vector<char>>*> arc_phases;
  std::vector<std::vector<char>> mask;
  if (cfg.use_delta_arcs &&
      static_cast<int>(graph.tasks.size()) > cfg.delta_arcs) {
    mask = delta_arc_mask(graph, duals, cfg.delta_arcs);
    arc_phases.push_back(&mask);
  }
  arc_phases.push_back(nullptr);

  for (const auto* arcs : arc_phases) {
    for (const auto& container : containers) {
      std::set<int> critical;
      while (true) {
        if (stats) ++stats->dssr_rounds;
        auto sinks = run_labeling(inst, graph, duals, occupancy, rule, filters,
                                  cfg, critical, &container, arcs, stats);
        int best_sink = -1;
        int best_comp = -1;
        double best_rc = cfg.rc_threshold;
        for (std::size_t s = 0; s < sinks.size(); ++s) {
          const SinkLabel& sl = sinks[s];
          bool banned_whole = false;
          std::vector<const SkillComposition*> banned_comps;
          for (int f : sl.tracked_full) {
            const auto& tc = filters->tracked[f];
            if (!tc.hard_forbid) continue;
            if (rule == DominanceRule::Disaggregated && tc.composition)
              banned_comps.push_back(&*tc.composition);
            else
              banned_whole = true;
          }
          if (banned_whole) continue;
          if (rule == DominanceRule::Aggregated) {
            if (sl.cost < best_rc) {
              best_rc = sl.cost;
              best_sink = static_cast<int>(s);
            }
          } else {
            std::vector<double> dsum(occupancy.size(), 0.0);
            for (std::size_t k = 0; k < occupancy.size(); ++k)
              dsum[k] = duals.delta_range(k, sl.tl, sl.tr);
            for (std::size_t ci = 0; ci < comps.size(); ++ci) {
              bool skip = false;
              for (const auto* bc : banned_comps)
                if (*bc == comps[ci]) skip = true;
              if (skip) continue;
              double rc = sl.cost;
              for (std::size_t k = 0; k < occupancy.size(); ++k)
                rc += dsum[k] * (occupancy[k] - comps[ci][k]);
              if (rc < best_rc) {
                best_rc = rc;
                best_sink = static_cast<int>(s);
                best_comp = static_cast<int>(ci);
              }
            }
          }
        }
        if (best_sink < 0) break;

        const SinkLabel& sl = sinks[best_sink];
        int repeated = cfg.use_dssr ? first_repeated_task(sl.route) : -1;
        if (repeated >= 0) {
          critical.insert(repeated);
          continue;
        }
        auto col = build_column(inst, sl.route, profile, sl.tl);
        if (!col) break;
        if (rule == DominanceRule::Disaggregated)
          col->composition = comps[best_comp];
        return PricedColumn{std::move(*col), best_rc};
      }
    }
  }
  return std::nullopt;
}

std::optional<LabelProbe> probe_label(const Instance& inst,
                                      const PricingGraph& graph,
                                      const DualSnapshot& duals,
                                      const std::vector<int>& occupancy,
                                      const std::vector<int>& path, int tl,
                                      const PricingConfig& cfg) {
  PricingConfig pc = cfg;
  pc.use_dssr = false;  // probes work with full task resources
  Labeling eng(inst, graph, duals, occupancy, DominanceRule::Aggregated,
               nullptr, pc, {}, nullptr, nullptr);
  auto lab = eng.build_path(path, tl);
  if (!lab) return std::nullopt;
  LabelProbe out;
  out.cost = lab->cost;
  out.offset_cost = lab->cost + lab->occ_delta_sum;
  out.finish_gamma = lab->finish_gamma;
  out.median = lab->median;
  out.tl = lab->tl;
  out.finish = lab->finish;
  for (std::size_t pos = 0; pos < graph.tasks.size(); ++pos)
    out.task_resources.push_back(
        {graph.tasks[pos], static_cast<int>(lab->task_res[pos])});
  return out;
}

std::optional<bool> probe_dominance(const Instance& inst,
                                    const PricingGraph& graph,
                                    const DualSnapshot& duals,
                                    const std::vector<int>& occupancy,
                                    DominanceRule rule,
                                    const std::vector<int>& path_a, int tl_a,
                                    const std::vector<int>& path_b, int tl_b,
                                    const PricingConfig& cfg) {
  PricingConfig pc = cfg;
  pc.use_dssr = false;
  Labeling eng(inst, graph, duals, occupancy, rule, nullptr, pc, {}, nullptr,
               nullptr);
  auto a = eng.build_path(path_a, tl_a);
  auto b = eng.build_path(path_b, tl_b);
  if (!a || !b || a->node != b->node) return std::nullopt;
  return eng.label_dominates(*a, *b);
}

}  // namespace tfr\n