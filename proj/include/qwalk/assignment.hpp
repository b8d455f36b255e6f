#pragma once

#include <vector>

#include <Eigen/Dense>

namespace qwalk {

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method).
/// Returns col_of_row: row r is matched with column col_of_row[r].
std::vector<int> solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace qwalk
