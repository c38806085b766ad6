#pragma once

#include <complex>
#include <vector>

namespace qes {

/// Minimum-cost perfect matching for a square cost matrix (Hungarian method,
/// O(n^3)). Returns row_to_col with row_to_col[i] the column matched to row i.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost);

/// Matches a[i] to b[perm[i]] minimising the summed distance.
std::vector<int> match_points(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b,
                              double* total_cost = nullptr);

}  // namespace qes
