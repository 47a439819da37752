#pragma once

#include <functional>
#include <vector>

namespace arcmap::numerics {

using Vector = std::vector<double>;
using ResidualFunction = std::function<Vector(const Vector&)>;

struct SolverSpec {
  int max_iter = 100;
  double residual_tol = 1e-12;
  void validate() const;
};

struct SolverResult {
  Vector x;
  double residual_norm = 0.0;
  int iterations = 0;
  long residual_evaluations = 0;
  bool converged = false;
  /// Residual norm after each accepted step, starting with the initial guess.
  std::vector<double> history;
};

/// Damped Gauss-Newton with a backtracking line search on ||r(x)||.
/// Jacobians by forward differences. Throws kSolverDiverged when the residual
/// or Jacobian turns non-finite and no finite step remains.
SolverResult solve_least_squares(const ResidualFunction& residual, Vector x0, const SolverSpec& spec = {});

}  // namespace arcmap::numerics
