#pragma once

#include <complex>
#include <functional>
#include <span>
#include <type_traits>
#include <vector>

namespace arcmap::numerics {

enum class QuadratureMethod { kAdaptiveSimpson, kGaussLegendre, kGaussJacobi };

struct QuadratureSpec {
  QuadratureMethod method = QuadratureMethod::kGaussLegendre;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  /// Gauss-Jacobi endpoint exponents: weight (t - a)^left_exponent (b - t)^right_exponent.
  double left_exponent = 0.0;
  double right_exponent = 0.0;

  static QuadratureSpec gauss_jacobi(double left_exponent, double right_exponent);
  void validate() const;
};

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  long evaluations = 0;
  int subdivisions = 0;
  bool converged = true;
};

using RealIntegrand = std::function<double(double)>;
using ComplexIntegrand = std::function<std::complex<double>(double)>;

/// Globally adaptive integration over [a, b]. Breakpoints inside (a, b) seed
/// the initial panel set. With gauss-jacobi, f is the full integrand
/// (singular factor included) and the endpoint panels absorb the weight.
///
/// Running out of subdivisions does not throw: the best value is returned with
/// converged = false.
QuadratureResult<double> integrate(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec,
                                   std::span<const double> breakpoints = {});
QuadratureResult<std::complex<double>> integrate(const ComplexIntegrand& f, double a, double b,
                                                 const QuadratureSpec& spec,
                                                 std::span<const double> breakpoints = {});

/// Dispatches callables by their return type (a lambda returning double
/// converts to both std::function overloads).
template <class F>
  requires(!std::is_same_v<std::decay_t<F>, RealIntegrand> && !std::is_same_v<std::decay_t<F>, ComplexIntegrand>)
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec, std::span<const double> breakpoints = {}) {
  if constexpr (std::is_same_v<std::invoke_result_t<F&, double>, std::complex<double>>)
    return integrate(ComplexIntegrand(std::forward<F>(f)), a, b, spec, breakpoints);
  else
    return integrate(RealIntegrand(std::forward<F>(f)), a, b, spec, breakpoints);
}

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule for the weight (1 - x)^alpha (1 + x)^beta on [-1, 1]
/// (Golub-Welsch). Results are cached; the returned reference stays valid.
const GaussRule& gauss_jacobi_rule(int n, double alpha, double beta);
inline const GaussRule& gauss_legendre_rule(int n) { return gauss_jacobi_rule(n, 0.0, 0.0); }

}  // namespace arcmap::numerics
