#include "tfr/lp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>
#include <sstream>

namespace tfr {

std::string LinearProgram::dump() const {
  std::ostringstream os;
  os << "min";
  for (int j = 0; j < n_cols(); ++j)
    if (cols[j].cost != 0.0) os << " + " << cols[j].cost << " x" << j;
  os << "\n";
  for (int i = 0; i < n_rows(); ++i) {
    os << "r" << i << ":";
    for (int j = 0; j < n_cols(); ++j)
      for (const auto& [r, a] : cols[j].entries)
        if (r == i) os << " + " << a << " x" << j;
    os << (rows[i].sense == RowSense::LE   ? " <= "
           : rows[i].sense == RowSense::GE ? " >= "
                                           : " == ")
       << rows[i].rhs << "\n";
  }
  for (int j = 0; j < n_cols(); ++j)
    os << "x" << j << " in [" << cols[j].lb << ", " << cols[j].ub << "]"
       << (cols[j].integral ? " int" : "") << "\n";
  return os.str();
}

namespace {

// Bounded-variable revised simplex over the equality system [A I] (x,s) = b.
// Column indices: 0..n-1 structural, n..n+m-1 slacks, n+m..n+2m-1 phase-1
// artificials. Dense basis inverse, refactorized periodically.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, long iter_limit)
      : lp_(lp), m_(lp.n_rows()), n_(lp.n_cols()), iter_limit_(iter_limit) {
    total_ = n_ + 2 * m_;
    lb_.assign(total_, 0.0);
    ub_.assign(total_, 0.0);
    cost_.assign(total_, 0.0);
    for (int j = 0; j < n_; ++j) {
      lb_[j] = lp.cols[j].lb;
      ub_[j] = lp.cols[j].ub;
      cost_[j] = lp.cols[j].cost;
    }
    for (int i = 0; i < m_; ++i) {
      int s = n_ + i;
      switch (lp.rows[i].sense) {
        case RowSense::LE: lb_[s] = 0.0; ub_[s] = kInf; break;
        case RowSense::GE: lb_[s] = -kInf; ub_[s] = 0.0; break;
        case RowSense::EQ: lb_[s] = 0.0; ub_[s] = 0.0; break;
      }
    }
    for (int i = 0; i < m_; ++i) {
      lb_[n_ + m_ + i] = 0.0;
      ub_[n_ + m_ + i] = kInf;
    }
    art_sign_.assign(m_, 1);
  }

  LpSolution run(const Basis* warm) {
    LpSolution sol;
    for (int j = 0; j < n_; ++j)
      if (lb_[j] > ub_[j] + 1e-12) {
        sol.status = LpStatus::Infeasible;
        return sol;
      }
    if (m_ == 0) return solve_no_rows();
    bool warm_ok = warm && warm->valid && try_warm_start(*warm);
    if (!warm_ok && !phase1()) {
      sol.status = infeasible_ ? LpStatus::Infeasible : LpStatus::IterLimit;
      return sol;
    }
    LpStatus st = optimize(/*artificials_allowed=*/false);
    sol.status = st;
    if (st != LpStatus::Optimal) return sol;

    sol.x.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) sol.x[j] = value_of(j);
    for (int j = 0; j < n_; ++j) sol.objective += lp_.cols[j].cost * sol.x[j];
    sol.y = duals();
    sol.basis.basic = basic_;
    sol.basis.at_upper.assign(at_upper_.begin(), at_upper_.end());
    sol.basis.valid = true;
    return sol;
  }

 private:
  const LinearProgram& lp_;
  int m_, n_, total_;
  long iter_limit_;
  long iters_ = 0;
  bool infeasible_ = false;

  std::vector<double> lb_, ub_, cost_;
  std::vector<int> art_sign_;

  std::vector<int> basic_;
  std::vector<int> pos_in_basis_;
  std::vector<char> at_upper_;
  std::vector<double> xb_;
  std::vector<std::vector<double>> binv_;

  double col_entry(int var, int i) const {
    if (var < n_) {
      for (const auto& [r, a] : lp_.cols[var].entries)
        if (r == i) return a;
      return 0.0;
    }
    if (var < n_ + m_) return var - n_ == i ? 1.0 : 0.0;
    return var - n_ - m_ == i ? double(art_sign_[var - n_ - m_]) : 0.0;
  }

  std::vector<double> ftran(int var) const {
    std::vector<double> w(m_, 0.0);
    if (var < n_) {
      for (const auto& [r, a] : lp_.cols[var].entries)
        for (int i = 0; i < m_; ++i) w[i] += binv_[i][r] * a;
    } else if (var < n_ + m_) {
      int r = var - n_;
      for (int i = 0; i < m_; ++i) w[i] = binv_[i][r];
    } else {
      int r = var - n_ - m_;
      for (int i = 0; i < m_; ++i) w[i] = binv_[i][r] * art_sign_[r];
    }
    return w;
  }

  double nonbasic_value(int j) const {
    if (at_upper_[j]) return ub_[j];
    if (lb_[j] > -kInf) return lb_[j];
    if (ub_[j] < kInf) return ub_[j];
    return 0.0;
  }

  double value_of(int j) const {
    int r = pos_in_basis_[j];
    return r >= 0 ? xb_[r] : nonbasic_value(j);
  }

  void compute_xb() {
    std::vector<double> rhs(m_);
    for (int i = 0; i < m_; ++i) rhs[i] = lp_.rows[i].rhs;
    // slacks and artificials rest at zero when nonbasic; only structural
    // variables contribute
    for (int j = 0; j < n_; ++j) {
      if (pos_in_basis_[j] >= 0) continue;
      double v = nonbasic_value(j);
      if (v == 0.0) continue;
      for (const auto& [r, a] : lp_.cols[j].entries) rhs[r] -= a * v;
    }
    xb_.assign(m_, 0.0);
    for (int i = 0; i < m_; ++i)
      for (int r = 0; r < m_; ++r) xb_[i] += binv_[i][r] * rhs[r];
  }

  bool refactorize() {
    std::vector<std::vector<double>> B(m_, std::vector<double>(m_, 0.0));
    for (int i = 0; i < m_; ++i)
      for (int r = 0; r < m_; ++r) B[r][i] = col_entry(basic_[i], r);
    binv_.assign(m_, std::vector<double>(m_, 0.0));
    for (int i = 0; i < m_; ++i) binv_[i][i] = 1.0;
    for (int c = 0; c < m_; ++c) {
      int piv = -1;
      double best = 1e-11;
      for (int r = c; r < m_; ++r)
        if (std::abs(B[r][c]) > best) {
          best = std::abs(B[r][c]);
          piv = r;
        }
      if (piv < 0) return false;
      std::swap(B[c], B[piv]);
      std::swap(binv_[c], binv_[piv]);
      double d = B[c][c];
      for (int k = 0; k < m_; ++k) {
        B[c][k] /= d;
        binv_[c][k] /= d;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        double f = B[r][c];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          B[r][k] -= f * B[c][k];
          binv_[r][k] -= f * binv_[c][k];
        }
      }
    }
    return true;
  }

  void set_basis(std::vector<int> basic, std::vector<char> up) {
    basic_ = std::move(basic);
    at_upper_ = std::move(up);
    at_upper_.resize(total_, 0);
    pos_in_basis_.assign(total_, -1);
    for (int i = 0; i < m_; ++i) pos_in_basis_[basic_[i]] = i;
    // nonbasic variables with no finite lower bound rest at their upper one
    for (int j = 0; j < total_; ++j) {
      if (pos_in_basis_[j] >= 0) continue;
      if (lb_[j] <= -kInf && ub_[j] < kInf) at_upper_[j] = 1;
      if (ub_[j] >= kInf && at_upper_[j]) at_upper_[j] = 0;
    }
  }

  bool try_warm_start(const Basis& warm) {
    if (static_cast<int>(warm.basic.size()) != m_) return false;
    for (int v : warm.basic)
      if (v < 0 || v >= n_ + m_) return false;
    std::vector<char> up(warm.at_upper.begin(), warm.at_upper.end());
    set_basis(warm.basic, std::move(up));
    if (!refactorize()) return false;
    compute_xb();
    for (int i = 0; i < m_; ++i) {
      int v = basic_[i];
      if (xb_[i] < lb_[v] - LpTol::feas || xb_[i] > ub_[v] + LpTol::feas)
        return false;
    }
    return true;
  }

  bool phase1() {
    std::vector<double> residual(m_);
    for (int i = 0; i < m_; ++i) residual[i] = lp_.rows[i].rhs;
    std::vector<char> up(total_, 0);
    for (int j = 0; j < n_; ++j) {
      double v;
      if (lb_[j] > -kInf) {
        v = lb_[j];
      } else if (ub_[j] < kInf) {
        v = ub_[j];
        up[j] = 1;
      } else {
        v = 0.0;
      }
      if (v != 0.0)
        for (const auto& [r, a] : lp_.cols[j].entries) residual[r] -= a * v;
    }
    std::vector<int> basic(m_);
    std::vector<double> phase1_cost(total_, 0.0);
    bool any_art = false;
    for (int i = 0; i < m_; ++i) {
      bool slack_ok;
      switch (lp_.rows[i].sense) {
        case RowSense::LE: slack_ok = residual[i] >= 0.0; break;
        case RowSense::GE: slack_ok = residual[i] <= 0.0; break;
        default: slack_ok = residual[i] == 0.0; break;
      }
      if (slack_ok) {
        basic[i] = n_ + i;
      } else {
        art_sign_[i] = residual[i] >= 0.0 ? 1 : -1;
        basic[i] = n_ + m_ + i;
        phase1_cost[n_ + m_ + i] = 1.0;
        any_art = true;
      }
    }
    set_basis(std::move(basic), std::move(up));
    if (!refactorize()) return false;
    compute_xb();

    if (any_art) {
      std::swap(cost_, phase1_cost);
      LpStatus st = optimize(/*artificials_allowed=*/true);
      std::swap(cost_, phase1_cost);
      if (st == LpStatus::IterLimit) return false;
      double infeas = 0.0;
      for (int i = 0; i < m_; ++i)
        if (basic_[i] >= n_ + m_) infeas += std::abs(xb_[i]);
      if (st != LpStatus::Optimal || infeas > 1e-7) {
        infeasible_ = true;
        return false;
      }
      // pivot zero-valued artificials out where possible
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] < n_ + m_) continue;
        for (int j = 0; j < n_ + m_; ++j) {
          if (pos_in_basis_[j] >= 0 || lb_[j] == ub_[j]) continue;
          auto w = ftran(j);
          if (std::abs(w[i]) > 1e-9) {
            pivot(j, i, w);
            xb_[i] = nonbasic_value(j);
            compute_xb();
            break;
          }
        }
      }
    }
    for (int a = n_ + m_; a < total_; ++a) ub_[a] = 0.0;  // lock artificials
    return true;
  }

  std::vector<double> duals() const {
    std::vector<double> y(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      double cb = cost_[basic_[i]];
      if (cb == 0.0) continue;
      for (int r = 0; r < m_; ++r) y[r] += cb * binv_[i][r];
    }
    return y;
  }

  void pivot(int entering, int row, const std::vector<double>& w) {
    double piv = w[row];
    for (int k = 0; k < m_; ++k) binv_[row][k] /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      double f = w[i];
      if (f == 0.0) continue;
      for (int k = 0; k < m_; ++k) binv_[i][k] -= f * binv_[row][k];
    }
    pos_in_basis_[basic_[row]] = -1;
    basic_[row] = entering;
    pos_in_basis_[entering] = row;
  }

  LpStatus optimize(bool artificials_allowed) {
    long since_refactor = 0;
    long degenerate_run = 0;
    bool bland = false;
    int scan_limit = artificials_allowed ? total_ : n_ + m_;
    while (true) {
      if (++iters_ > iter_limit_) return LpStatus::IterLimit;
      if (++since_refactor > 200) {
        refactorize();
        compute_xb();
        since_refactor = 0;
      }
      std::vector<double> y = duals();

      int entering = -1;
      int dir = +1;
      double best_violation = LpTol::reduced_cost;
      for (int j = 0; j < scan_limit; ++j) {
        if (pos_in_basis_[j] >= 0 || lb_[j] == ub_[j]) continue;
        double d = cost_[j];
        if (j < n_) {
          for (const auto& [r, a] : lp_.cols[j].entries) d -= y[r] * a;
        } else if (j < n_ + m_) {
          d -= y[j - n_];
        } else {
          d -= y[j - n_ - m_] * art_sign_[j - n_ - m_];
        }
        bool at_up = at_upper_[j] != 0;
        double violation = 0.0;
        int this_dir = 0;
        if (!at_up && d < -LpTol::reduced_cost) {
          violation = -d;
          this_dir = +1;
        } else if (at_up && d > LpTol::reduced_cost) {
          violation = d;
          this_dir = -1;
        } else if (lb_[j] <= -kInf && ub_[j] >= kInf &&
                   std::abs(d) > LpTol::reduced_cost) {
          violation = std::abs(d);
          this_dir = d < 0 ? +1 : -1;
        }
        if (this_dir == 0) continue;
        if (bland) {
          entering = j;
          dir = this_dir;
          break;
        }
        if (violation > best_violation) {
          best_violation = violation;
          entering = j;
          dir = this_dir;
        }
      }
      if (entering < 0) return LpStatus::Optimal;

      auto w = ftran(entering);
      double t_best =
          (ub_[entering] < kInf && lb_[entering] > -kInf)
              ? ub_[entering] - lb_[entering]
              : kInf;
      int leave_row = -1;
      bool leave_at_upper = false;
      for (int i = 0; i < m_; ++i) {
        double wi = w[i] * dir;
        int v = basic_[i];
        double t;
        bool to_upper;
        if (wi > 1e-11) {
          if (lb_[v] <= -kInf) continue;
          t = (xb_[i] - lb_[v]) / wi;
          to_upper = false;
        } else if (wi < -1e-11) {
          if (ub_[v] >= kInf) continue;
          t = (xb_[i] - ub_[v]) / wi;
          to_upper = true;
        } else {
          continue;
        }
        t = std::max(t, 0.0);
        bool take;
        if (leave_row < 0 || t < t_best - 1e-12) {
          take = t < t_best;
        } else if (t < t_best + 1e-12) {
          // tie break: Bland prefers the smallest variable index, otherwise
          // the numerically largest pivot
          take = bland ? v < basic_[leave_row]
                       : std::abs(w[i]) > std::abs(w[leave_row]);
        } else {
          take = false;
        }
        if (take) {
          t_best = t;
          leave_row = i;
          leave_at_upper = to_upper;
        }
      }
      if (t_best >= kInf) return LpStatus::Unbounded;

      if (t_best < 1e-11) {
        if (++degenerate_run > 1000) bland = true;
      } else {
        degenerate_run = 0;
      }

      if (leave_row < 0) {
        at_upper_[entering] = dir > 0;  // bound flip
        compute_xb();
        continue;
      }
      for (int i = 0; i < m_; ++i) xb_[i] -= t_best * w[i] * dir;
      double enter_val = nonbasic_value(entering) + dir * t_best;
      int leaving = basic_[leave_row];
      pivot(entering, leave_row, w);
      xb_[leave_row] = enter_val;
      at_upper_[leaving] = leave_at_upper;
      at_upper_[entering] = 0;
    }
  }

  LpSolution solve_no_rows() {
    LpSolution sol;
    sol.x.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
      const auto& c = lp_.cols[j];
      if (c.lb > c.ub) {
        sol.status = LpStatus::Infeasible;
        return sol;
      }
      if (c.cost >= 0) {
        if (c.lb <= -kInf) {
          sol.status = c.cost > 0 ? LpStatus::Unbounded : LpStatus::Optimal;
          if (sol.status == LpStatus::Unbounded) return sol;
          sol.x[j] = 0.0;
        } else {
          sol.x[j] = c.lb;
        }
      } else {
        if (c.ub >= kInf) {
          sol.status = LpStatus::Unbounded;
          return sol;
        }
        sol.x[j] = c.ub;
      }
      sol.objective += c.cost * sol.x[j];
    }
    sol.status = LpStatus::Optimal;
    return sol;
  }
};

struct MipNode {
  double bound;
  long id;
  std::vector<std::pair<int, std::pair<double, double>>> bound_changes;
  bool operator>(const MipNode& o) const {
    if (bound != o.bound) return bound > o.bound;
    return id > o.id;
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const Basis* warm,
                    long iter_limit) {
  Simplex s(lp, iter_limit);
  return s.run(warm);
}

LpSolution solve_mip(const LinearProgram& lp, const MipConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  auto timed_out = [&]() {
    if (cfg.time_limit <= 0) return false;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
               .count() > cfg.time_limit;
  };

  LpSolution best;
  best.status = LpStatus::NoSolution;
  double incumbent = kInf;
  bool have_incumbent = false;

  std::priority_queue<MipNode, std::vector<MipNode>, std::greater<MipNode>>
      open;
  open.push({-kInf, 0, {}});
  long next_id = 1;
  long nodes = 0;
  bool hit_limit = false;

  LinearProgram work = lp;
  while (!open.empty()) {
    if (nodes >= cfg.node_limit || timed_out()) {
      hit_limit = true;
      break;
    }
    MipNode node = open.top();
    open.pop();
    if (have_incumbent && node.bound >= incumbent - 1e-9) continue;
    ++nodes;

    std::vector<std::pair<int, std::pair<double, double>>> saved;
    saved.reserve(node.bound_changes.size());
    bool empty_domain = false;
    for (const auto& [j, b] : node.bound_changes) {
      saved.push_back({j, {work.cols[j].lb, work.cols[j].ub}});
      work.cols[j].lb = std::max(work.cols[j].lb, b.first);
      work.cols[j].ub = std::min(work.cols[j].ub, b.second);
      if (work.cols[j].lb > work.cols[j].ub + 1e-12) empty_domain = true;
    }
    LpSolution rel;
    if (!empty_domain) rel = solve_lp(work);
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
      work.cols[it->first].lb = it->second.first;
      work.cols[it->first].ub = it->second.second;
    }
    if (empty_domain || rel.status == LpStatus::Infeasible) continue;
    if (rel.status != LpStatus::Optimal) continue;
    if (have_incumbent && rel.objective >= incumbent - 1e-9) continue;

    int branch_var = -1;
    double best_frac_dist = LpTol::integrality;
    for (int j = 0; j < lp.n_cols(); ++j) {
      if (!lp.cols[j].integral) continue;
      double f = rel.x[j] - std::floor(rel.x[j]);
      double dist = std::min(f, 1.0 - f);
      if (dist > best_frac_dist + 1e-12) {
        best_frac_dist = dist;
        branch_var = j;
      }
    }
    if (branch_var < 0) {
      if (!have_incumbent || rel.objective < incumbent - 1e-12) {
        incumbent = rel.objective;
        have_incumbent = true;
        best = rel;
        for (int j = 0; j < lp.n_cols(); ++j)
          if (lp.cols[j].integral) best.x[j] = std::round(best.x[j]);
        if (cfg.incumbent_callback) cfg.incumbent_callback(best.x, incumbent);
      }
      continue;
    }
    if (static_cast<long>(node.bound_changes.size()) >= cfg.depth_limit)
      continue;

    double xval = rel.x[branch_var];
    auto down = node.bound_changes;
    down.push_back({branch_var, {-kInf, std::floor(xval)}});
    auto up = node.bound_changes;
    up.push_back({branch_var, {std::ceil(xval), kInf}});
    open.push({rel.objective, next_id++, std::move(down)});
    open.push({rel.objective, next_id++, std::move(up)});
  }

  double open_bound = kInf;
  bool any_open = false;
  while (!open.empty()) {
    open_bound = std::min(open_bound, open.top().bound);
    any_open = true;
    open.pop();
  }

  if (have_incumbent) {
    bool proven = !any_open || open_bound >= incumbent - 1e-9;
    best.status = proven ? LpStatus::Optimal : LpStatus::IterLimit;
    best.objective = incumbent;
    best.bound = any_open ? std::min(open_bound, incumbent) : incumbent;
  } else if (hit_limit) {
    best.status = LpStatus::NoSolution;
    best.bound = any_open ? open_bound : kInf;
  } else {
    best.status = LpStatus::Infeasible;
    best.bound = kInf;
  }
  return best;
}

}  // namespace tfr
