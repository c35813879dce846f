#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace tfr {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Centralized numeric tolerances for the embedded solver.
struct LpTol {
  static constexpr double feas = 1e-7;
  static constexpr double integrality = 1e-6;
  static constexpr double duality_gap = 1e-6;
  static constexpr double reduced_cost = 1e-9;
};

enum class RowSense { LE, GE, EQ };

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit, NoSolution };

struct LinearProgram {
  struct Column {
    double cost = 0.0;
    double lb = 0.0;
    double ub = kInf;
    bool integral = false;
    std::vector<std::pair<int, double>> entries;  // (row, coefficient)
  };
  struct Row {
    RowSense sense = RowSense::LE;
    double rhs = 0.0;
  };

  std::vector<Column> cols;
  std::vector<Row> rows;

  int add_row(RowSense sense, double rhs) {
    rows.push_back({sense, rhs});
    return static_cast<int>(rows.size()) - 1;
  }
  int add_col(double cost, double lb, double ub,
              std::vector<std::pair<int, double>> entries,
              bool integral = false) {
    cols.push_back({cost, lb, ub, integral, std::move(entries)});
    return static_cast<int>(cols.size()) - 1;
  }
  int n_cols() const { return static_cast<int>(cols.size()); }
  int n_rows() const { return static_cast<int>(rows.size()); }
  std::string dump() const;  // LP-format-ish text, debugging only
};

struct Basis {
  std::vector<int> basic;      // variable index per row
  std::vector<char> at_upper;  // nonbasic-at-upper flags, size = total vars
  bool valid = false;
};

struct LpSolution {
  LpStatus status = LpStatus::NoSolution;
  double objective = 0.0;
  double bound = -kInf;          // MIP: best proven lower bound
  std::vector<double> x;         // primal values per column
  std::vector<double> y;         // dual value per row (min problem convention:
                                 // >= 0 for GE rows, <= 0 for LE rows)
  Basis basis;

  bool optimal() const { return status == LpStatus::Optimal; }
};

// Revised simplex over bounded variables, two phases, dense inverse with
// periodic refactorization; Bland's rule after 1000 degenerate pivots.
LpSolution solve_lp(const LinearProgram& lp, const Basis* warm = nullptr,
                    long iter_limit = 200000);

struct MipConfig {
  // Deterministic budget: number of branch-and-bound nodes.
  long node_limit = 200000;
  // Wall-clock limit in seconds; <= 0 means no wall clock check.
  double time_limit = 0.0;
  long depth_limit = 100000;
  std::function<void(const std::vector<double>&, double)> incumbent_callback;
};

// Best-first branch and bound on the LP relaxation, branching on the most
// fractional integral variable. Returns the best solution found; bound is
// the proven lower bound (min over open nodes and the incumbent).
LpSolution solve_mip(const LinearProgram& lp, const MipConfig& cfg = {});

}  // namespace tfr
