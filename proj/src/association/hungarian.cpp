#include "racesim/association/hungarian.hpp"

#include <algorithm>
#include <cmath>

namespace racesim {

// Kuhn-Munkres with row/column potentials on a padded square matrix.
// Forbidden entries are replaced by a finite sentinel large enough that any
// matching avoiding them beats any matching using them, while staying small
// enough to not swamp double precision for the feasible entries.
std::vector<int> solve_assignment(const std::vector<double>& cost, int rows, int cols) {
  if (rows <= 0 || cols <= 0) return std::vector<int>(std::max(rows, 0), -1);

  const int n = std::max(rows, cols);
  double max_abs = 1.0;
  for (int i = 0; i < rows * cols; ++i) {
    if (std::isfinite(cost[i])) max_abs = std::max(max_abs, std::abs(cost[i]));
  }
  const double big = (static_cast<double>(n) + 1.0) * 2.0 * max_abs;

  // Padded square matrix; dummy rows/columns cost 0 so padding never distorts
  // the choice among real pairs.
  std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double c = cost[static_cast<size_t>(i) * cols + j];
      a[static_cast<size_t>(i) * n + j] = std::isfinite(c) ? c : big;
    }
  }

  // Potentials u, v; p[j] = row matched to column j (1-indexed, 0 = none).
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[static_cast<size_t>(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> row_to_col(rows, -1);
  for (int j = 1; j <= n; ++j) {
    const int i = p[j];
    if (i >= 1 && i <= rows && j <= cols) {
      const double c = cost[static_cast<size_t>(i - 1) * cols + (j - 1)];
      if (std::isfinite(c)) row_to_col[i - 1] = j - 1;
    }
  }
  return row_to_col;
}

}  // namespace racesim
