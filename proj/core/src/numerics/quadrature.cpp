#include "arcmap/numerics/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <tuple>

#include "arcmap/error.hpp"

namespace arcmap::numerics {

namespace {

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15).
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kJacobiPanelNodes = 20;

template <class T>
struct Panel {
  double a;
  double b;
  double left_exponent;
  double right_exponent;
  T value;
  double error;
};

template <class T, class F>
void kronrod_panel(const F& f, Panel<T>& p, long& evals) {
  const double c = 0.5 * (p.a + p.b);
  const double h = 0.5 * (p.b - p.a);
  const T fc = f(c);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kKronrodNodes[j];
    const T sum = f(c - dx) + f(c + dx);
    kronrod += sum * kKronrodWeights[j];
    if (j % 2 == 1) gauss += sum * kGaussWeights[j / 2];
  }
  evals += 15;
  p.value = kronrod * h;
  p.error = std::abs((kronrod - gauss) * h);
}

template <class T, class F>
void simpson_panel(const F& f, Panel<T>& p, long& evals) {
  const double h = p.b - p.a;
  const T f0 = f(p.a), f1 = f(p.a + 0.25 * h), f2 = f(p.a + 0.5 * h), f3 = f(p.a + 0.75 * h), f4 = f(p.b);
  evals += 5;
  const T coarse = (f0 + 4.0 * f2 + f4) * (h / 6.0);
  const T fine = (f0 + 4.0 * f1 + 2.0 * f2 + 4.0 * f3 + f4) * (h / 12.0);
  p.value = fine + (fine - coarse) / 15.0;
  p.error = std::abs(fine - coarse) / 15.0;
}

template <class T, class G>
T jacobi_sum(const G& g, const Panel<T>& p, int n, long& evals) {
  const GaussRule& rule = gauss_jacobi_rule(n, p.right_exponent, p.left_exponent);
  const double h = 0.5 * (p.b - p.a);
  T sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * g(p.a + h * (1.0 + rule.nodes[i]));
  evals += n;
  return sum * std::pow(h, 1.0 + p.left_exponent + p.right_exponent);
}

template <class T, class F>
void jacobi_panel(const F& f, Panel<T>& p, long& evals) {
  // The integrand carries the singular factor; divide it back out so the
  // Jacobi rule sees a smooth function.
  auto g = [&](double t) -> T {
    double w = 1.0;
    if (p.left_exponent != 0.0) w *= std::pow(t - p.a, p.left_exponent);
    if (p.right_exponent != 0.0) w *= std::pow(p.b - t, p.right_exponent);
    return f(t) / w;
  };
  const T coarse = jacobi_sum(g, p, kJacobiPanelNodes, evals);
  const T fine = jacobi_sum(g, p, 2 * kJacobiPanelNodes, evals);
  p.value = fine;
  p.error = std::abs(fine - coarse);
}

template <class T, class F>
QuadratureResult<T> adaptive(const F& f, double a, double b, const QuadratureSpec& spec,
                             std::span<const double> breakpoints) {
  spec.validate();
  require(std::isfinite(a) && std::isfinite(b), "integrate: interval endpoints must be finite");
  QuadratureResult<T> result;
  if (a == b) return result;
  require(a < b, "integrate: interval must satisfy a <= b");

  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const bool jacobi = spec.method == QuadratureMethod::kGaussJacobi;
  auto evaluate = [&](Panel<T>& p) {
    if (p.left_exponent != 0.0 || p.right_exponent != 0.0)
      jacobi_panel(f, p, result.evaluations);
    else if (spec.method == QuadratureMethod::kAdaptiveSimpson)
      simpson_panel(f, p, result.evaluations);
    else
      kronrod_panel(f, p, result.evaluations);
  };

  std::vector<Panel<T>> panels;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel<T> p{cuts[i], cuts[i + 1], 0.0, 0.0, T{}, 0.0};
    if (jacobi && i == 0) p.left_exponent = spec.left_exponent;
    if (jacobi && i + 2 == cuts.size()) p.right_exponent = spec.right_exponent;
    evaluate(p);
    panels.push_back(p);
  }

  auto worse = [&](std::size_t i, std::size_t j) { return panels[i].error < panels[j].error; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> heap(worse);
  for (std::size_t i = 0; i < panels.size(); ++i) heap.push(i);

  auto totals = [&] {
    T value{};
    double error = 0.0;
    for (const auto& p : panels) value += p.value, error += p.error;
    return std::pair{value, error};
  };

  auto [value, error] = totals();
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value)) && !heap.empty()) {
    if (result.subdivisions >= spec.max_subdivisions) break;
    const std::size_t i = heap.top();
    heap.pop();
    Panel<T> parent = panels[i];
    const double mid = 0.5 * (parent.a + parent.b);
    if (!(mid > parent.a && mid < parent.b)) continue;  // panel at machine resolution
    Panel<T> left{parent.a, mid, parent.left_exponent, 0.0, T{}, 0.0};
    Panel<T> right{mid, parent.b, 0.0, parent.right_exponent, T{}, 0.0};
    evaluate(left);
    evaluate(right);
    ++result.subdivisions;
    value += left.value + right.value - parent.value;
    error += left.error + right.error - parent.error;
    panels[i] = left;
    panels.push_back(right);
    heap.push(i);
    heap.push(panels.size() - 1);
  }
  std::tie(value, error) = totals();
  result.value = value;
  result.error = error;
  result.converged = error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
  return result;
}

}  // namespace

QuadratureSpec QuadratureSpec::gauss_jacobi(double left_exponent, double right_exponent) {
  QuadratureSpec spec;
  spec.method = QuadratureMethod::kGaussJacobi;
  spec.left_exponent = left_exponent;
  spec.right_exponent = right_exponent;
  return spec;
}

void QuadratureSpec::validate() const {
  require(abs_tol > 0.0 && rel_tol > 0.0, "quadrature tolerances must be positive");
  require(max_subdivisions >= 0, "max_subdivisions must be non-negative");
  if (method == QuadratureMethod::kGaussJacobi)
    require(left_exponent > -1.0 && right_exponent > -1.0, "gauss-jacobi exponents must exceed -1");
}

QuadratureResult<double> integrate(const RealIntegrand& f, double a, double b, const QuadratureSpec& spec,
                                   std::span<const double> breakpoints) {
  return adaptive<double>(f, a, b, spec, breakpoints);
}

QuadratureResult<std::complex<double>> integrate(const ComplexIntegrand& f, double a, double b,
                                                 const QuadratureSpec& spec, std::span<const double> breakpoints) {
  return adaptive<std::complex<double>>(f, a, b, spec, breakpoints);
}

const GaussRule& gauss_jacobi_rule(int n, double alpha, double beta) {
  require(n >= 1, "gauss rule needs at least one node");
  require(alpha > -1.0 && beta > -1.0, "jacobi exponents must exceed -1");

  static std::mutex mutex;
  static std::map<std::tuple<int, double, double>, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, alpha, beta}];
  if (slot) return *slot;

  const double ab = alpha + beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = k == 0 ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    const double b2 = k == 1 ? 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
                             : 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    sub(k - 1) = std::sqrt(b2);
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                              std::lgamma(ab + 2.0));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  auto rule = std::make_unique<GaussRule>();
  for (int k = 0; k < n; ++k) {
    rule->nodes.push_back(solver.eigenvalues()(k));
    const double v = solver.eigenvectors()(0, k);
    rule->weights.push_back(mu0 * v * v);
  }
  slot = std::move(rule);
  return *slot;
}

}  // namespace arcmap::numerics
