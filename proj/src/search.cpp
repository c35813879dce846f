#include "tfr/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <map>
#include <queue>
#include <stdexcept>

namespace tfr {

FeatureConfig parse_features(const std::string& s) {
  if (s == "full") return FeatureConfig::Full;
  if (s == "basic") return FeatureConfig::Basic;
  if (s == "no-cgc") return FeatureConfig::NoCgc;
  if (s == "no-drmp") return FeatureConfig::NoDrmp;
  if (s == "no-branching") return FeatureConfig::NoBranching;
  throw std::invalid_argument(
      "features must be one of: full, basic, no-cgc, no-drmp, no-branching");
}

std::string feature_name(FeatureConfig f) {
  switch (f) {
    case FeatureConfig::Full: return "full";
    case FeatureConfig::Basic: return "basic";
    case FeatureConfig::NoCgc: return "no-cgc";
    case FeatureConfig::NoDrmp: return "no-drmp";
    default: return "no-branching";
  }
}

double objective_shift(const Instance& inst) {
  double s = 0.0;
  for (const auto& t : inst.tasks) s += t.weight * t.ef;
  return s;
}

namespace {

struct ColumnKey {
  int profile;
  int tl;
  std::vector<int> route;
  std::vector<int> comp;

  bool operator<(const ColumnKey& o) const {
    if (profile != o.profile) return profile < o.profile;
    if (tl != o.tl) return tl < o.tl;
    if (route != o.route) return route < o.route;
    return comp < o.comp;
  }
};

ColumnKey key_of(const Column& c) {
  ColumnKey k;
  k.profile = c.profile;
  k.tl = c.tl;
  k.route = c.route;
  if (c.composition) k.comp = *c.composition;
  return k;
}

struct ColumnDecision {
  bool aggregated = true;  // which pool the index refers to
  int pool_index = 0;
  bool force = false;
};

struct Node {
  long id = 0;
  long sibling = -1;
  double bound = -kInf;  // unshifted
  bool disaggregated = false;
  std::vector<TaskWindow> windows;
  std::vector<TourCountRow> tour_rows;
  std::vector<ColumnDecision> decisions;
};

struct OpenEntry {
  double bound;
  long id;
  bool operator>(const OpenEntry& o) const {
    if (bound != o.bound) return bound > o.bound;
    return id > o.id;
  }
};

bool use_switch(FeatureConfig f) {
  return f == FeatureConfig::Full || f == FeatureConfig::NoCgc ||
         f == FeatureConfig::NoBranching;
}
bool use_cuts(FeatureConfig f) {
  return f == FeatureConfig::Full || f == FeatureConfig::NoDrmp ||
         f == FeatureConfig::NoBranching;
}
bool use_finish_branching(FeatureConfig f) {
  return f == FeatureConfig::Full || f == FeatureConfig::NoDrmp ||
         f == FeatureConfig::NoCgc;
}

class Solver {
 public:
  Solver(const Instance& inst, const SolveConfig& cfg) : work_(inst), cfg_(cfg) {
    if (cfg.gamma) work_.gamma = *cfg.gamma;
    if (cfg.alpha) work_.alpha = *cfg.alpha;
    if (cfg.hard_windows_only) work_.alpha = 0.0;  // chance constraint off
    if (work_.gamma <= 0.0 || work_.gamma > 1.0)
      throw std::invalid_argument("gamma outside (0,1]");
  }

  SolveResult run() {
    t_start_ = std::chrono::steady_clock::now();
    amp_pool_ = initial_columns(work_);
    for (std::size_t c = 0; c < amp_pool_.size(); ++c)
      if (!amp_pool_[c].artificial) amp_keys_[key_of(amp_pool_[c])] = c;

    Node root;
    root.id = 0;
    root.disaggregated = cfg_.force_disaggregated_root;
    root.windows.assign(work_.n_tasks(), {});
    nodes_.push_back(root);
    open_.push({-kInf, 0});

    bool timed_out = false;
    while (!open_.empty()) {
      if (elapsed() > cfg_.time_limit) {
        timed_out = true;
        break;
      }
      OpenEntry e = open_.top();
      open_.pop();
      if (e.bound >= incumbent_cost_ - 1e-9) continue;
      process_node(nodes_[e.id]);
    }

    SolveResult res;
    double lb = incumbent_cost_;
    {
      std::priority_queue<OpenEntry, std::vector<OpenEntry>,
                          std::greater<OpenEntry>> rest = open_;
      while (!rest.empty()) {
        lb = std::min(lb, std::max(rest.top().bound, 0.0));
        rest.pop();
      }
    }
    if (timed_out) early_termination();

    double shift = objective_shift(work_);
    bool have_real = incumbent_ && !incumbent_has_artificial_;
    res.stats = stats_;
    res.stats.time_total = elapsed();
    res.stats.root_lb = root_lb_unshifted_ - shift;
    if (timed_out && !open_.empty()) {
      res.status = SolveStatus::TimeLimit;
    } else if (have_real) {
      res.status = SolveStatus::Optimal;
    } else {
      res.status = SolveStatus::Infeasible;
    }
    if (have_real) {
      res.incumbent = incumbent_;
      res.upper_bound = incumbent_cost_ - shift;
    } else {
      res.upper_bound = kInf;
    }
    res.lower_bound = std::max(lb, 0.0) - shift;
    if (have_real)
      res.gap = std::max(0.0, (incumbent_cost_ - std::max(lb, 0.0)) /
                                  std::max(incumbent_cost_, 1e-9));
    else
      res.gap = 1.0;
    if (res.status == SolveStatus::TimeLimit && !have_real) res.incumbent.reset();
    // a time-limited run that never found anything real keeps TimeLimit
    // status; an exhausted tree without a real incumbent is infeasible
    return res;
  }

 private:
  Instance work_;
  SolveConfig cfg_;
  std::vector<Column> amp_pool_, dmp_pool_;
  std::map<ColumnKey, std::size_t> amp_keys_, dmp_keys_;
  std::size_t dmp_synced_upto_ = 0;
  std::vector<ChvatalGomoryCut> cuts_;
  std::vector<NoGoodRow> nogoods_;  // aggregated pool, global validity
  std::vector<Node> nodes_;
  std::priority_queue<OpenEntry, std::vector<OpenEntry>, std::greater<OpenEntry>>
      open_;
  std::optional<Solution> incumbent_;
  bool incumbent_has_artificial_ = false;
  double incumbent_cost_ = kInf;  // unshifted, artificial-inclusive
  double root_lb_unshifted_ = 0.0;
  SolveStats stats_;
  std::chrono::steady_clock::time_point t_start_;

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         t_start_).count();
  }

  std::vector<Column>& node_pool(const Node& n) {
    return n.disaggregated ? dmp_pool_ : amp_pool_;
  }

  void sync_dmp_pool() {
    for (; dmp_synced_upto_ < amp_pool_.size(); ++dmp_synced_upto_) {
      for (Column& c : expand_compositions(work_, amp_pool_[dmp_synced_upto_])) {
        if (c.artificial) {
          if (dmp_pool_.empty()) dmp_pool_.push_back(std::move(c));
          continue;
        }
        ColumnKey k = key_of(c);
        if (dmp_keys_.count(k)) continue;
        dmp_keys_[k] = dmp_pool_.size();
        dmp_pool_.push_back(std::move(c));
      }
    }
  }

  // Node-local view: which pool columns are selectable, which are forced,
  // which tasks disappear from pricing, and which columns pricing must track.
  struct NodeView {
    MasterSpec spec;
    NodeFilters filters;
  };

  NodeView make_view(const Node& node) {
    NodeView v;
    v.spec.inst = &work_;
    v.spec.kind = node.disaggregated ? MasterKind::Disaggregated
                                     : MasterKind::Aggregated;
    v.spec.pool = &node_pool(node);
    v.spec.cuts = &cuts_;
    v.spec.tour_rows = node.tour_rows;
    if (!node.disaggregated) v.spec.nogoods = nogoods_;

    v.filters.task_removed.assign(work_.n_tasks(), 0);
    v.filters.finish_windows = node.windows;

    const std::vector<Column>& pool = *v.spec.pool;
    std::vector<char> forbidden(pool.size(), 0);
    std::vector<char> forced(pool.size(), 0);
    std::vector<std::pair<ColumnKey, bool>> agg_decisions;  // key, force

    for (const auto& d : node.decisions) {
      if (d.aggregated && !node.disaggregated) {
        (d.force ? forced : forbidden)[d.pool_index] = 1;
      } else if (!d.aggregated && node.disaggregated) {
        (d.force ? forced : forbidden)[d.pool_index] = 1;
      } else if (d.aggregated && node.disaggregated) {
        // aggregated decision seen from a disaggregated node
        const Column& ac = amp_pool_[d.pool_index];
        if (ac.artificial) continue;
        agg_decisions.push_back({key_of(ac), d.force});
        if (d.force) {
          ForcedSumRow row;
          row.route = ac.route;
          row.profile = ac.profile;
          row.tl = ac.tl;
          v.spec.forced_sums.push_back(row);
        }
      }
    }

    // tasks covered by forced columns leave the pricing networks
    auto remove_tasks = [&](const std::vector<int>& route) {
      for (int t : route) v.filters.task_removed[t] = 1;
    };
    for (std::size_t c = 0; c < pool.size(); ++c)
      if (forced[c] && !pool[c].artificial) remove_tasks(pool[c].route);
    for (const auto& fs : v.spec.forced_sums) remove_tasks(fs.route);

    // tracked columns: forbidden ones are dropped on regeneration
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (!forbidden[c] || pool[c].artificial) continue;
      TrackedColumn tc;
      tc.route = pool[c].route;
      tc.profile = pool[c].profile;
      tc.tl = pool[c].tl;
      tc.composition = pool[c].composition;
      tc.hard_forbid = true;
      v.filters.tracked.push_back(tc);
    }
    for (const auto& [k, force] : agg_decisions) {
      if (force) continue;  // forbidden aggregated column in DMP node
      (void)k;
    }
    if (node.disaggregated)
      for (const auto& [k, force] : agg_decisions) {
        if (force) continue;
        TrackedColumn tc;
        tc.route = k.route;
        tc.profile = k.profile;
        tc.tl = k.tl;
        tc.hard_forbid = true;  // bans every composition of the column
        v.filters.tracked.push_back(tc);
      }

    v.spec.active.assign(pool.size(), 1);
    v.spec.forced.assign(pool.size(), 0);
    for (std::size_t c = 0; c < pool.size(); ++c) {
      const Column& col = pool[c];
      if (col.artificial) continue;  // always selectable, never branched
      bool active = !forbidden[c];
      if (active)
        for (std::size_t i = 0; i < col.route.size() && active; ++i)
          if (!node.windows[col.route[i]].contains(col.finish_gamma[i]))
            active = false;
      if (active && node.disaggregated)
        for (const auto& [k, force] : agg_decisions)
          if (!force && k.profile == col.profile && k.tl == col.tl &&
              k.route == col.route)
            active = false;
      bool exempt = forced[c];
      for (const auto& fs : v.spec.forced_sums)
        if (col.profile == fs.profile && col.tl == fs.tl &&
            col.route == fs.route)
          exempt = true;
      if (active && !exempt)
        for (int t : col.route)
          if (v.filters.task_removed[t]) active = false;
      v.spec.active[c] = active;
      v.spec.forced[c] = forced[c];
    }
    return v;
  }

  // Column generation to convergence. Returns the final master solve; the
  // LP may come back non-optimal (infeasible node). `converged` is false
  // when the time limit interrupted the loop, in which case the LP value is
  // not a valid node bound.
  MasterSolve column_generation(const Node& node, NodeView& view,
                                bool& converged) {
    if (node.disaggregated) sync_dmp_pool();
    converged = true;
    Basis warm;
    MasterSolve ms;
    while (true) {
      view = make_view(node);
      ms = solve_master(view.spec, warm.valid ? &warm : nullptr);
      if (!ms.lp.optimal()) return ms;
      warm = ms.lp.basis;
      ++stats_.pricing_rounds;

      std::vector<TrackedColumn> tracked;
      DualSnapshot duals = make_dual_snapshot(view.spec, ms, &tracked);
      NodeFilters filters = view.filters;
      for (auto& tc : tracked) filters.tracked.push_back(tc);

      DominanceRule rule = node.disaggregated ? DominanceRule::Disaggregated
                                              : DominanceRule::Aggregated;
      auto t0 = std::chrono::steady_clock::now();
      std::vector<std::optional<PricedColumn>> found(work_.n_profiles());
      if (cfg_.threads > 1) {
        std::vector<std::future<std::optional<PricedColumn>>> futs;
        for (int q = 0; q < work_.n_profiles(); ++q)
          futs.push_back(std::async(std::launch::async, [&, q]() {
            PricingStats ps;
            auto r = price_profile(work_, q, duals, rule, &filters,
                                   cfg_.pricing, &ps);
            return r;
          }));
        for (int q = 0; q < work_.n_profiles(); ++q) found[q] = futs[q].get();
      } else {
        for (int q = 0; q < work_.n_profiles(); ++q) {
          PricingStats ps;
          found[q] =
              price_profile(work_, q, duals, rule, &filters, cfg_.pricing, &ps);
          stats_.labels_created += ps.labels_created;
          stats_.labels_dominated += ps.labels_dominated;
          stats_.labels_extended += ps.labels_extended;
        }
      }
      stats_.time_pricing +=
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();

      int added = 0;
      auto& pool = node_pool(node);
      auto& keys = node.disaggregated ? dmp_keys_ : amp_keys_;
      for (int q = 0; q < work_.n_profiles(); ++q) {
        if (!found[q]) continue;
        ColumnKey k = key_of(found[q]->column);
        if (keys.count(k)) continue;  // regenerated duplicate, converged
        keys[k] = pool.size();
        pool.push_back(std::move(found[q]->column));
        ++added;
        ++stats_.columns_generated;
      }
      if (added == 0) return ms;
      if (elapsed() > cfg_.time_limit) {
        converged = false;
        return ms;
      }
    }
  }

  struct IntegerSelection {
    std::vector<std::size_t> pool_ids;  // with multiplicity
    bool has_artificial = false;
    double cost = 0.0;
  };

  std::optional<IntegerSelection> try_extract_integer(const Node& node,
                                                      const MasterSolve& ms) {
    const auto& pool = node.disaggregated ? dmp_pool_ : amp_pool_;
    IntegerSelection sel;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      double v = ms.lp.x[c];
      double r = std::round(v);
      if (std::abs(v - r) > LpTol::integrality) {
        if (!pool[c].artificial) return std::nullopt;
        r = std::ceil(v - LpTol::integrality);  // artificial-only fraction
      }
      for (int m = 0; m < static_cast<int>(r + 0.5); ++m)
        sel.pool_ids.push_back(c);
    }
    // over-covering is never optimal here; drop redundant columns greedily
    std::vector<int> cover(work_.n_tasks(), 0);
    for (std::size_t id : sel.pool_ids)
      for (int t : pool[id].route) ++cover[t];
    std::vector<std::size_t> order(sel.pool_ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                     std::size_t b) {
      return pool[sel.pool_ids[a]].cost > pool[sel.pool_ids[b]].cost;
    });
    std::vector<char> dropped(sel.pool_ids.size(), 0);
    for (std::size_t i : order) {
      const Column& col = pool[sel.pool_ids[i]];
      bool redundant = true;
      for (int t : col.route)
        if (cover[t] <= 1) redundant = false;
      if (redundant && !col.artificial) {
        dropped[i] = 1;
        for (int t : col.route) --cover[t];
      }
    }
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < sel.pool_ids.size(); ++i)
      if (!dropped[i]) kept.push_back(sel.pool_ids[i]);
    sel.pool_ids = kept;
    for (std::size_t id : sel.pool_ids) {
      sel.cost += pool[id].cost;
      sel.has_artificial |= pool[id].artificial;
    }
    return sel;
  }

  void accept_incumbent(const Node& node, const IntegerSelection& sel,
                        std::vector<WorkerFlow> flows) {
    if (sel.cost >= incumbent_cost_ - 1e-12) return;
    incumbent_cost_ = sel.cost;
    incumbent_has_artificial_ = sel.has_artificial;
    Solution s;
    const auto& pool = node.disaggregated ? dmp_pool_ : amp_pool_;
    for (std::size_t id : sel.pool_ids)
      if (!pool[id].artificial) s.columns.push_back(pool[id]);
    s.flows = std::move(flows);
    s.objective_unshifted = sel.cost;
    s.objective = 0.0;
    for (const auto& c : s.columns) s.objective += c.cost_shifted;
    incumbent_ = std::move(s);
  }

  void process_node(Node& node) {
    ++stats_.nodes_explored;
    bool counted_armp = false, counted_drmp = false;
    NodeView view;
    while (true) {
      if (node.disaggregated && !counted_drmp) {
        ++stats_.drmp_nodes;
        counted_drmp = true;
      } else if (!node.disaggregated && !counted_armp) {
        ++stats_.armp_nodes;
        counted_armp = true;
      }
      bool converged = true;
      MasterSolve ms = column_generation(node, view, converged);
      if (!ms.lp.optimal()) return;  // infeasible branch constraints
      if (!converged) {
        // interrupted mid-generation: the restricted value is no bound;
        // requeue so the final accounting keeps the inherited bound
        open_.push({node.bound, node.id});
        return;
      }
      if (node.bound > -kInf && ms.lp.objective < node.bound - 1e-7)
        ++stats_.bound_violations;
      node.bound = ms.lp.objective;

      // root CGC loop: separate, add, re-price until budget or no cut
      if (node.id == 0 && use_cuts(cfg_.features) &&
          static_cast<int>(cuts_.size()) < cfg_.max_cuts &&
          !try_extract_integer(node, ms) && elapsed() <= cfg_.time_limit) {
        const auto& pool = node_pool(node);
        std::vector<const Column*> cols;
        std::vector<double> lambda;
        for (std::size_t c = 0; c < pool.size(); ++c) {
          cols.push_back(&pool[c]);
          lambda.push_back(ms.lp.x[c]);
        }
        SeparationConfig scfg;
        scfg.node_budget = cfg_.separation_node_budget;
        auto cut = separate_cgc(work_, cols, lambda, ms.work_rows, scfg);
        if (cut) {
          cut->index = static_cast<int>(cuts_.size());
          cuts_.push_back(std::move(*cut));
          ++stats_.cuts_added;
          continue;
        }
      }
      if (node.id == 0) root_lb_unshifted_ = ms.lp.objective;

      if (ms.lp.objective >= incumbent_cost_ - 1e-9) return;  // bound prune

      auto sel = try_extract_integer(node, ms);
      if (!sel) {
        branch(node, ms);
        return;
      }
      if (sel->has_artificial) {
        accept_incumbent(node, *sel, {});
        return;
      }
      const auto& pool = node_pool(node);
      std::vector<Column> selected;
      for (std::size_t id : sel->pool_ids) selected.push_back(pool[id]);

      if (node.disaggregated) {
        auto flows = construct_dmp_certificate(selected, work_);
        accept_incumbent(node, *sel, std::move(flows));
        return;
      }
      FeasCheckResult fc = feasibility_check(selected, work_);
      if (fc.feasible) {
        accept_incumbent(node, *sel, std::move(fc.flows));
        return;
      }
      ++stats_.disagg_infeasible;
      if (use_switch(cfg_.features)) {
        // mark this node and its sibling, then re-solve disaggregated
        node.disaggregated = true;
        if (node.sibling >= 0) nodes_[node.sibling].disaggregated = true;
        continue;
      }
      NoGoodRow row;
      for (std::size_t id : sel->pool_ids) row.members.push_back(int(id));
      nogoods_.push_back(std::move(row));
      // re-solve the node with the forbidding row in place
    }
  }

  void branch(const Node& node, const MasterSolve& ms) {
    const auto& pool = node.disaggregated ? dmp_pool_ : amp_pool_;
    std::vector<std::size_t> fractional;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      double v = ms.lp.x[c];
      if (std::abs(v - std::round(v)) > LpTol::integrality)
        fractional.push_back(c);
    }
    if (fractional.empty()) return;  // nothing to do

    Node left, right;
    left.windows = node.windows;
    right.windows = node.windows;
    left.tour_rows = node.tour_rows;
    right.tour_rows = node.tour_rows;
    left.decisions = node.decisions;
    right.decisions = node.decisions;
    left.disaggregated = node.disaggregated;
    right.disaggregated = node.disaggregated;
    left.bound = ms.lp.objective;
    right.bound = ms.lp.objective;

    bool made = false;
    if (use_finish_branching(cfg_.features))
      made = branch_finish_times(node, ms, fractional, left, right);
    if (!made) made = branch_tour_count(node, ms, left, right);
    if (!made) made = branch_variable(node, ms, fractional, left, right);
    if (!made) return;

    left.id = static_cast<long>(nodes_.size());
    right.id = left.id + 1;
    left.sibling = right.id;
    right.sibling = left.id;
    nodes_.push_back(std::move(left));
    nodes_.push_back(std::move(right));
    open_.push({nodes_[nodes_.size() - 2].bound, nodes_[nodes_.size() - 2].id});
    open_.push({nodes_[nodes_.size() - 1].bound, nodes_[nodes_.size() - 1].id});
  }

  bool branch_finish_times(const Node& node, const MasterSolve& ms,
                           const std::vector<std::size_t>& fractional,
                           Node& left, Node& right) {
    const auto& pool = node.disaggregated ? dmp_pool_ : amp_pool_;
    (void)ms;
    // per task: omega_gamma finish times over fractional columns
    std::vector<std::vector<int>> values(work_.n_tasks());
    for (std::size_t c : fractional) {
      const Column& col = pool[c];
      for (std::size_t i = 0; i < col.route.size(); ++i)
        values[col.route[i]].push_back(col.finish_gamma[i]);
    }
    int best_unique = 0;
    for (int i = 0; i < work_.n_tasks(); ++i) {
      std::vector<int> u = values[i];
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      best_unique = std::max(best_unique, static_cast<int>(u.size()));
    }
    if (best_unique < 2) return false;

    int task = -1;
    double best_sigma = -1.0;
    for (int i = 0; i < work_.n_tasks(); ++i) {
      std::vector<int> u = values[i];
      std::sort(u.begin(), u.end());
      u.erase(std::unique(u.begin(), u.end()), u.end());
      if (static_cast<int>(u.size()) != best_unique) continue;
      double mean = 0.0;
      for (int v : values[i]) mean += v;
      mean /= values[i].size();
      double var = 0.0;
      for (int v : values[i]) var += (v - mean) * (v - mean);
      var /= values[i].size();
      double sigma = std::sqrt(var);
      if (sigma > best_sigma + 1e-12) {
        best_sigma = sigma;
        task = i;
      }
    }
    if (task < 0 || best_sigma <= 1e-12) return false;

    std::vector<int> b = values[task];
    std::sort(b.begin(), b.end());
    double median = b.size() % 2 == 1
                        ? b[b.size() / 2]
                        : 0.5 * (b[b.size() / 2 - 1] + b[b.size() / 2]);
    int tau = static_cast<int>(std::floor(median));
    left.windows[task].hi = std::min(left.windows[task].hi, tau);
    right.windows[task].lo = std::max(right.windows[task].lo, tau + 1);
    return true;
  }

  bool branch_tour_count(const Node& node, const MasterSolve& ms, Node& left,
                         Node& right) {
    const auto& pool = node.disaggregated ? dmp_pool_ : amp_pool_;
    int best_tau = -1;
    double best_dist = 0.5 - 1e-9;
    double best_l = 0.0;
    for (int tau = 0; tau <= work_.time_ub(); ++tau) {
      double l = 0.0;
      for (std::size_t c = 0; c < pool.size(); ++c)
        if (ms.lp.x[c] > 1e-12 && pool[c].occupies(tau)) l += ms.lp.x[c];
      double frac = l - std::floor(l);
      double dist = std::abs(frac - 0.5);
      if (dist < best_dist - 1e-12) {
        best_dist = dist;
        best_tau = tau;
        best_l = l;
      }
    }
    if (best_tau < 0) return false;
    left.tour_rows.push_back({best_tau, RowSense::LE, std::floor(best_l)});
    right.tour_rows.push_back({best_tau, RowSense::GE, std::ceil(best_l)});
    return true;
  }

  bool branch_variable(const Node& node, const MasterSolve& ms,
                       const std::vector<std::size_t>& fractional, Node& left,
                       Node& right) {
    const auto& pool = node.disaggregated ? dmp_pool_ : amp_pool_;
    int best = -1;
    double best_dist = -1.0;
    for (std::size_t c : fractional) {
      if (pool[c].artificial) continue;
      double v = ms.lp.x[c];
      double frac = v - std::floor(v);
      double dist = 0.5 - std::abs(frac - 0.5);  // closeness to one half
      if (dist > best_dist + 1e-12) {
        best_dist = dist;
        best = static_cast<int>(c);
      }
    }
    if (best < 0) return false;
    ColumnDecision forbid{!node.disaggregated, best, false};
    ColumnDecision force{!node.disaggregated, best, true};
    forbid.aggregated = !node.disaggregated;
    force.aggregated = !node.disaggregated;
    left.decisions.push_back(forbid);
    right.decisions.push_back(force);
    return true;
  }

  // Time limit fallback: solve the disaggregated MIP over every column seen
  // so far, expanded across all compositions.
  void early_termination() {
    sync_dmp_pool();
    if (dmp_pool_.empty()) return;
    MasterSpec spec;
    spec.inst = &work_;
    spec.kind = MasterKind::Disaggregated;
    spec.pool = &dmp_pool_;
    spec.cuts = nullptr;
    MasterSolve layout;
    LinearProgram lp = build_master_lp(spec, layout);
    for (auto& col : lp.cols) {
      col.integral = true;
      col.ub = std::min(col.ub, 1.0);
    }
    MipConfig mc;
    mc.node_limit = cfg_.early_term_node_budget;
    mc.time_limit = cfg_.early_term_time_limit;
    LpSolution sol = solve_mip(lp, mc);
    if (sol.status != LpStatus::Optimal && sol.status != LpStatus::IterLimit)
      return;

    IntegerSelection sel;
    for (std::size_t c = 0; c < dmp_pool_.size(); ++c)
      if (sol.x[c] > 0.5) {
        sel.pool_ids.push_back(c);
        sel.cost += dmp_pool_[c].cost;
        sel.has_artificial |= dmp_pool_[c].artificial;
      }
    if (sel.pool_ids.empty() || sel.cost >= incumbent_cost_ - 1e-12) return;
    std::vector<Column> selected;
    for (std::size_t id : sel.pool_ids)
      if (!dmp_pool_[id].artificial) selected.push_back(dmp_pool_[id]);
    Node fake;
    fake.disaggregated = true;
    std::vector<WorkerFlow> flows;
    if (!sel.has_artificial) flows = construct_dmp_certificate(selected, work_);
    accept_incumbent(fake, sel, std::move(flows));
  }
};

}  // namespace

SolveResult solve(const Instance& inst, const SolveConfig& cfg) {
  Solver s(inst, cfg);
  return s.run();
}

}  // namespace tfr
