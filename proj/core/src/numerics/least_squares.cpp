#include "arcmap/numerics/least_squares.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "arcmap/error.hpp"

namespace arcmap::numerics {

namespace {

Eigen::VectorXd to_eigen(const Vector& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()); }

bool all_finite(const Vector& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

constexpr int kMaxBacktracks = 40;

}  // namespace

void SolverSpec::validate() const {
  require(residual_tol > 0.0, "solver residual_tol must be positive");
  require(max_iter >= 0, "solver max_iter must be non-negative");
}

SolverResult solve_least_squares(const ResidualFunction& residual, Vector x0, const SolverSpec& spec) {
  spec.validate();
  require(!x0.empty(), "solve_least_squares: empty initial guess");
  require(all_finite(x0), "solve_least_squares: non-finite initial guess");

  SolverResult out;
  auto eval = [&](const Vector& x) {
    ++out.residual_evaluations;
    return residual(x);
  };

  Vector x = std::move(x0);
  Vector r = eval(x);
  if (r.empty() || !all_finite(r)) fail(ErrorKind::kSolverDiverged, "residual is non-finite at the initial guess");
  const auto m = static_cast<Eigen::Index>(r.size());
  const auto n = static_cast<Eigen::Index>(x.size());
  double norm = to_eigen(r).norm();
  out.history.push_back(norm);
  double lambda = 0.0;

  while (norm > spec.residual_tol && out.iterations < spec.max_iter) {
    Eigen::MatrixXd jac(m, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      Vector xs = x;
      const double h = 1e-7 * (1.0 + std::abs(x[j]));
      xs[j] += h;
      const Vector rs = eval(xs);
      if (rs.size() != r.size()) fail(ErrorKind::kInvalidInput, "residual changed length between calls");
      if (!all_finite(rs)) fail(ErrorKind::kSolverDiverged, "non-finite residual while forming the Jacobian");
      jac.col(j) = (to_eigen(rs) - to_eigen(r)) / h;
    }

    const Eigen::VectorXd rv = to_eigen(r);
    bool accepted = false;
    // Gauss-Newton direction first; Levenberg damping only when the line
    // search stalls on it.
    for (int attempt = 0; attempt < 8 && !accepted; ++attempt) {
      Eigen::VectorXd step;
      if (lambda == 0.0) {
        step = jac.colPivHouseholderQr().solve(-rv);
      } else {
        Eigen::MatrixXd normal = jac.transpose() * jac;
        normal.diagonal().array() += lambda * (1.0 + normal.diagonal().array());
        step = normal.ldlt().solve(-jac.transpose() * rv);
      }
      if (!step.allFinite()) {
        lambda = lambda == 0.0 ? 1e-6 : lambda * 100.0;
        continue;
      }
      double scale = 1.0;
      for (int b = 0; b < kMaxBacktracks; ++b, scale *= 0.5) {
        Vector trial = x;
        for (Eigen::Index j = 0; j < n; ++j) trial[j] += scale * step(j);
        const Vector rt = eval(trial);
        if (!all_finite(rt)) continue;
        const double trial_norm = to_eigen(rt).norm();
        if (trial_norm < norm) {
          x = std::move(trial);
          r = rt;
          norm = trial_norm;
          accepted = true;
          break;
        }
      }
      if (accepted) {
        lambda = lambda * 0.1 < 1e-12 ? 0.0 : lambda * 0.1;
      } else {
        lambda = lambda == 0.0 ? 1e-6 : lambda * 100.0;
      }
    }
    ++out.iterations;
    if (!accepted) break;  // no descent left at working precision
    out.history.push_back(norm);
  }

  out.x = std::move(x);
  out.residual_norm = norm;
  out.converged = norm <= spec.residual_tol;
  return out;
}

}  // namespace arcmap::numerics
