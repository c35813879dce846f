#pragma once

// Test-only oracle: a textbook dense Big-M tableau simplex, independent of
// the production solver. Variables are non-negative; rows carry a sense.

#include <cmath>
#include <vector>

namespace oracle {

struct Row {
  std::vector<double> a;
  char sense;  // '<', '>', '='
  double rhs;
};

struct Result {
  int status;  // 0 optimal, 1 infeasible, 2 unbounded
  double objective;
  std::vector<double> x;
};

inline Result simplex(std::vector<double> c, std::vector<Row> rows) {
  int n = static_cast<int>(c.size());
  int m = static_cast<int>(rows.size());
  double cmax = 1.0;
  for (double v : c) cmax = std::max(cmax, std::abs(v));
  const double kM = 1e7 * cmax;

  // normalize rhs >= 0
  for (auto& r : rows)
    if (r.rhs < 0) {
      for (auto& v : r.a) v = -v;
      r.rhs = -r.rhs;
      r.sense = r.sense == '<' ? '>' : (r.sense == '>' ? '<' : '=');
    }
  // columns: n structural + slack/surplus + artificials
  int total = n;
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (int i = 0; i < m; ++i) {
    if (rows[i].sense == '<') slack_col[i] = total++;
    if (rows[i].sense == '>') slack_col[i] = total++;
  }
  for (int i = 0; i < m; ++i)
    if (rows[i].sense != '<') art_col[i] = total++;

  std::vector<std::vector<double>> T(m + 1, std::vector<double>(total + 1, 0.0));
  std::vector<int> basis(m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) T[i][j] = rows[i].a[j];
    if (rows[i].sense == '<') {
      T[i][slack_col[i]] = 1.0;
      basis[i] = slack_col[i];
    } else if (rows[i].sense == '>') {
      T[i][slack_col[i]] = -1.0;
    }
    if (art_col[i] >= 0) {
      T[i][art_col[i]] = 1.0;
      basis[i] = art_col[i];
    }
    T[i][total] = rows[i].rhs;
  }
  std::vector<double> cost(total, 0.0);
  for (int j = 0; j < n; ++j) cost[j] = c[j];
  for (int i = 0; i < m; ++i)
    if (art_col[i] >= 0) cost[art_col[i]] = kM;

  // objective row: z_j - c_j
  for (int j = 0; j <= total; ++j) {
    double z = 0.0;
    for (int i = 0; i < m; ++i) z += cost[basis[i]] * T[i][j];
    T[m][j] = z - (j < total ? cost[j] : 0.0);
  }

  long iters = 0;
  const long max_iters = 20000;
  while (true) {
    if (++iters > max_iters) return {1, 0.0, {}};
    int enter = -1;
    double best = 1e-9;
    bool bland = iters > max_iters / 2;
    for (int j = 0; j < total; ++j) {
      if (T[m][j] > best) {
        enter = j;
        if (bland) break;
        best = T[m][j];
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      if (T[i][enter] > 1e-9) {
        double ratio = T[i][total] / T[i][enter];
        if (leave < 0 || ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) return {2, 0.0, {}};
    double piv = T[leave][enter];
    for (int j = 0; j <= total; ++j) T[leave][j] /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = T[i][enter];
      if (f == 0.0) continue;
      for (int j = 0; j <= total; ++j) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  for (int i = 0; i < m; ++i)
    if (art_col[i] >= 0 && basis[i] == art_col[i] && T[i][total] > 1e-6)
      return {1, 0.0, {}};

  Result res;
  res.status = 0;
  res.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = T[i][total];
  res.objective = 0.0;
  for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

}  // namespace oracle
