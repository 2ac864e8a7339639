#pragma once

// Dense primal-dual interior-point solver for the box-row LP
//
//   maximize 1.m   subject to  -1 <= G m <= 1 (row-wise),  0 <= m <= U.
//
// This is the whole LP family the capacity estimator needs: rows are
// kernel potentials at constraint points, the two-sided unit bound is the
// sup-norm ball, and U is a generous safety box that flags unbounded
// relaxations. Mehrotra predictor-corrector on the normal equations.

#include <Eigen/Dense>

namespace capflow {

enum class LpStatus { optimal, max_iterations, unbounded, failed };

struct LpResult {
  Eigen::VectorXd m;
  double objective = 0.0;
  int iterations = 0;
  double rel_gap = 0.0;
  LpStatus status = LpStatus::failed;
};

LpResult solve_box_lp(const Eigen::MatrixXd& G, double upper_bound,
                      double opt_tol, int max_iterations = 100);

}  // namespace capflow
