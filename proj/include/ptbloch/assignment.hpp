#pragma once

#include <Eigen/Dense>
#include <vector>

namespace ptbloch {

/// Exact minimal-total-cost perfect matching on a square cost matrix
/// (Hungarian method with potentials, O(n^3)).  Returns result[row] = column.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost);

}  // namespace ptbloch
