#pragma once

#include <limits>
#include <vector>

namespace racesim {

/// Cost value marking a forbidden row/column pairing.
inline constexpr double kForbiddenCost = std::numeric_limits<double>::infinity();

/// Minimum-cost one-to-one assignment over a rectangular cost matrix
/// (rows x cols, row-major). Forbidden entries are kForbiddenCost.
/// Returns row_to_col with -1 for rows left unassigned (only possible when
/// rows > cols or a row has no feasible column in the optimal solution).
/// The returned assignment minimizes the total cost over all maximal
/// feasible matchings.
std::vector<int> solve_assignment(const std::vector<double>& cost, int rows, int cols);

}  // namespace racesim
