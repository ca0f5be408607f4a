#pragma once

#include <Eigen/Dense>

namespace altserve {

struct LinearSolution {
  Eigen::VectorXd x;
  double condition = 0.0;  // 1-norm condition estimate of the matrix
};

// Dense solve by LU with partial pivoting plus one step of iterative
// refinement. Throws numeric_error on a singular factorization or when the
// condition estimate exceeds 1e12.
LinearSolution solve_dense(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

// Condition threshold shared with callers that report diagnostics.
inline constexpr double kConditionLimit = 1e12;

}  // namespace altserve
