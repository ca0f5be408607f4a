#include "altserve/linalg.hpp"

#include <cmath>
#include <sstream>

#include "altserve/errors.hpp"

namespace altserve {

LinearSolution solve_dense(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.rows() != a.cols() || a.rows() != b.size() || a.rows() == 0) {
    throw numeric_error("solve_dense: matrix/vector shape mismatch");
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);

  const double rcond = lu.rcond();
  if (!(rcond > 0.0) || !std::isfinite(rcond)) {
    throw numeric_error("solve_dense: singular matrix");
  }
  const double condition = 1.0 / rcond;
  if (condition > kConditionLimit) {
    std::ostringstream os;
    os << "solve_dense: condition estimate " << condition << " exceeds "
       << kConditionLimit;
    throw numeric_error(os.str());
  }

  Eigen::VectorXd x = lu.solve(b);
  // One step of iterative refinement.
  const Eigen::VectorXd r = b - a * x;
  x += lu.solve(r);

  if (!x.allFinite()) {
    throw numeric_error("solve_dense: non-finite solution");
  }
  return {std::move(x), condition};
}

}  // namespace altserve
