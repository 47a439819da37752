#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "arcmap/geometry/curve_io.hpp"
#include "arcmap/geometry/predicates.hpp"
#include "detail.hpp"

namespace arcmap::conformal {

using detail::kTwoPi;

namespace {

/// Integrals of f(zeta) = prod (1 - zeta/z_k)^beta_k along straight segments
/// in the closed disk: Gauss-Jacobi next to a prevertex, compound
/// Gauss-Legendre elsewhere with panels no longer than their distance to the
/// nearest prevertex.
class ScKernel {
 public:
  ScKernel(std::vector<double> beta, int nodes) : beta_(std::move(beta)) {
    legendre_ = &numerics::gauss_legendre_rule(nodes);
    for (double b : beta_) jacobi_.push_back(&numerics::gauss_jacobi_rule(nodes, 0.0, b));
  }

  void set_angles(const std::vector<double>& theta) {
    z_.resize(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) z_[k] = std::polar(1.0, theta[k]);
  }

  const std::vector<cplx>& prevertices() const { return z_; }
  std::size_t size() const { return z_.size(); }

  cplx integrand(cplx zeta, std::size_t skip = npos) const {
    cplx f = 1.0;
    for (std::size_t k = 0; k < z_.size(); ++k)
      if (k != skip && beta_[k] != 0.0) f *= std::pow(1.0 - zeta / z_[k], beta_[k]);
    return f;
  }

  /// \int_a^b f, with neither endpoint a prevertex.
  cplx regular(cplx a, cplx b, int depth = 0) const {
    const double len = std::abs(b - a);
    if (len == 0.0) return 0.0;
    if (depth < 60 && len > distance_to_prevertices(a, b)) {
      const cplx m = 0.5 * (a + b);
      return regular(a, m, depth + 1) + regular(m, b, depth + 1);
    }
    const cplx h = 0.5 * (b - a);
    const cplx mid = 0.5 * (a + b);
    cplx sum = 0.0;
    for (std::size_t i = 0; i < legendre_->nodes.size(); ++i)
      sum += legendre_->weights[i] * integrand(mid + h * legendre_->nodes[i]);
    return sum * h;
  }

  /// \int_{z_k}^b f.
  cplx from_prevertex(std::size_t k, cplx b) const {
    const cplx zk = z_[k];
    const double len = std::abs(b - zk);
    if (len == 0.0) return 0.0;
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < z_.size(); ++j)
      if (j != k) nearest = std::min(nearest, std::abs(zk - z_[j]));
    const double ell = std::min(len, 0.5 * nearest);
    const cplx e = ell < len ? zk + (b - zk) * (ell / len) : b;
    // On [z_k, e]: 1 - zeta/z_k = -(e - z_k)(1 + x) / (2 z_k).
    const cplx h = 0.5 * (e - zk);
    const cplx scale = beta_[k] == 0.0 ? cplx(1.0) : std::pow(-h / zk, beta_[k]);
    const auto& rule = *jacobi_[k];
    cplx sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      sum += rule.weights[i] * integrand(zk + h * (1.0 + rule.nodes[i]), k);
    cplx total = scale * h * sum;
    if (ell < len) total += regular(e, b);
    return total;
  }

  /// \int_{z_j}^{z_k} f.
  cplx between(std::size_t j, std::size_t k) const {
    const cplx m = 0.5 * (z_[j] + z_[k]);
    return from_prevertex(j, m) - from_prevertex(k, m);
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  double distance_to_prevertices(cplx a, cplx b) const {
    double d = std::numeric_limits<double>::infinity();
    for (cplx z : z_)
      d = std::min(d, geometry::point_segment_distance(Point2(z), Point2(a), Point2(b)));
    return d;
  }

  std::vector<double> beta_;
  std::vector<cplx> z_;
  const numerics::GaussRule* legendre_;
  std::vector<const numerics::GaussRule*> jacobi_;
};

struct ScParams {
  std::vector<cplx> vertices;
  std::vector<double> beta;
  std::vector<double> theta;  // increasing in [0, 2pi)
  double scale = 1.0;         // Phi'(0)
  cplx w0;
  int nodes = 24;
  double solver_residual = 0.0;
  int solver_iterations = 0;
  std::vector<std::string> flags;
};

class ScMap final : public RiemannMap {
 public:
  ScMap(ScParams p, JordanCurve polygon) : p_(std::move(p)), kernel_(p_.beta, p_.nodes) {
    kernel_.set_angles(p_.theta);
    w0_ = p_.w0;
    target_ = std::move(polygon);
    flags_ = p_.flags;
    // Consistency between the two anchors: vertices reached from the centre.
    double residual = 0.0;
    for (std::size_t k = 0; k < kernel_.size(); ++k) {
      const cplx from_center = p_.w0 - p_.scale * kernel_.from_prevertex(k, 0.0);
      residual = std::max(residual, std::abs(from_center - p_.vertices[k]));
    }
    boundary_residual_ = residual;
    sample_boundary_table(2048, p_.theta);
  }

  EngineVariant variant() const override { return EngineVariant::kSchwarzChristoffel; }
  std::string name() const override { return "schwarz-christoffel"; }
  std::vector<double> singular_angles() const override { return p_.theta; }

  const ScParams& params() const { return p_; }

  cplx eval(cplx z) const override {
    const auto& zs = kernel_.prevertices();
    std::size_t best = zs.size();
    double best_dist = std::abs(z);
    for (std::size_t k = 0; k < zs.size(); ++k) {
      const double d = std::abs(z - zs[k]);
      if (d < best_dist) best_dist = d, best = k;
    }
    if (best == zs.size()) return p_.w0 + p_.scale * kernel_.regular(0.0, z);
    if (best_dist == 0.0) return p_.vertices[best];
    return p_.vertices[best] + p_.scale * kernel_.from_prevertex(best, z);
  }

  cplx deriv(cplx z) const override { return p_.scale * kernel_.integrand(z); }

  nlohmann::json to_json() const override {
    auto j = common_json();
    nlohmann::json verts = nlohmann::json::array();
    for (cplx v : p_.vertices) verts.push_back(detail::to_json(v));
    j["vertices"] = verts;
    j["turning_exponents"] = p_.beta;
    j["prevertex_angles"] = p_.theta;
    j["scale"] = p_.scale;
    j["nodes"] = p_.nodes;
    j["solver_residual"] = p_.solver_residual;
    j["solver_iterations"] = p_.solver_iterations;
    j["target"] = geometry::curve_to_json(target_);
    return j;
  }

 protected:
  Point2 boundary(double t) const override { return Point2(eval(std::polar(1.0, t))); }

 private:
  ScParams p_;
  ScKernel kernel_;
};

/// theta_0 = 0 and positive gaps 2 pi softmax(y, 0).
std::vector<double> angles_from_logits(const numerics::Vector& y) {
  const std::size_t n = y.size() + 1;
  std::vector<double> g(n, 0.0);
  const double top = std::max(0.0, *std::max_element(y.begin(), y.end()));
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    g[k] = std::exp((k + 1 < n ? y[k] : 0.0) - top);
    total += g[k];
  }
  std::vector<double> theta(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) theta[k] = theta[k - 1] + kTwoPi * g[k - 1] / total;
  return theta;
}

}  // namespace

Engine build_schwarz_christoffel(const JordanCurve& polygon, cplx w0, const ScOptions& options) {
  require(options.nodes >= 4, "schwarz-christoffel: need at least four quadrature nodes");
  const auto corners = polygon.corners();
  const std::size_t n = corners.size();
  require(n >= 3, "schwarz-christoffel: polygon needs three vertices");
  require(geometry::point_in_jordan(polygon, Point2(w0)) == geometry::Location::kInside,
          "schwarz-christoffel: w0 must lie strictly inside the polygon");

  ScParams p;
  p.nodes = options.nodes;
  p.w0 = w0;
  for (const Point2& c : corners) p.vertices.push_back(c.as_complex());
  std::vector<double> length(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx prev = p.vertices[(k + n - 1) % n];
    const cplx here = p.vertices[k];
    const cplx next = p.vertices[(k + 1) % n];
    p.beta.push_back(-std::arg((next - here) / (here - prev)) / std::numbers::pi);
    length[k] = std::abs(next - here);
  }

  ScKernel kernel(p.beta, p.nodes);
  const cplx side0 = p.vertices[1] - p.vertices[0];
  const cplx offset = (p.vertices[0] - w0) / side0;
  auto residual = [&](const numerics::Vector& y) {
    kernel.set_angles(angles_from_logits(y));
    numerics::Vector r;
    const cplx i0 = kernel.between(0, 1);
    for (std::size_t k = 1; k + 2 < n; ++k)
      r.push_back(std::log(std::abs(kernel.between(k, k + 1)) / std::abs(i0)) - std::log(length[k] / length[0]));
    const cplx center = offset + kernel.from_prevertex(0, 0.0) / i0;
    r.push_back(center.real());
    r.push_back(center.imag());
    return r;
  };

  const auto sol = numerics::solve_least_squares(residual, numerics::Vector(n - 1, 0.0), options.solver);
  p.solver_residual = sol.residual_norm;
  p.solver_iterations = sol.iterations;
  if (!sol.converged) {
    if (!(sol.residual_norm <= 1e-8))
      fail(ErrorKind::kSolverDiverged, "schwarz-christoffel: parameter problem did not converge (residual " +
                                           std::to_string(sol.residual_norm) + ")");
    p.flags.push_back("solver-not-converged");
  }

  // C = (w_1 - w_0) / I_0; rotating the prevertices by arg C makes Phi'(0) = |C|.
  std::vector<double> theta = angles_from_logits(sol.x);
  kernel.set_angles(theta);
  const cplx c = side0 / kernel.between(0, 1);
  p.scale = std::abs(c);
  for (double& t : theta) t = detail::wrap_angle(t + std::arg(c));
  const auto first = std::min_element(theta.begin(), theta.end()) - theta.begin();
  std::rotate(theta.begin(), theta.begin() + first, theta.end());
  std::rotate(p.vertices.begin(), p.vertices.begin() + first, p.vertices.end());
  std::rotate(p.beta.begin(), p.beta.begin() + first, p.beta.end());
  p.theta = theta;
  return std::make_shared<ScMap>(std::move(p), polygon);
}

Engine detail::schwarz_christoffel_from_json(const nlohmann::json& j) {
  check_keys(j, {"variant", "name", "w0", "boundary_residual", "flags", "vertices", "turning_exponents",
                 "prevertex_angles", "scale", "nodes", "solver_residual", "solver_iterations", "target"});
  ScParams p;
  p.w0 = cplx_from_json(j.at("w0"));
  for (const auto& v : j.at("vertices")) p.vertices.push_back(cplx_from_json(v));
  p.beta = j.at("turning_exponents").get<std::vector<double>>();
  p.theta = j.at("prevertex_angles").get<std::vector<double>>();
  p.scale = j.at("scale").get<double>();
  p.nodes = j.at("nodes").get<int>();
  p.solver_residual = j.at("solver_residual").get<double>();
  p.solver_iterations = j.at("solver_iterations").get<int>();
  p.flags = j.at("flags").get<std::vector<std::string>>();
  const std::size_t n = p.vertices.size();
  require(n >= 3 && p.beta.size() == n && p.theta.size() == n, "engine json: inconsistent SC parameter lengths");
  for (std::size_t k = 1; k < n; ++k)
    require(p.theta[k] > p.theta[k - 1], "engine json: prevertex angles must increase");
  require(p.scale > 0.0 && p.nodes >= 4, "engine json: invalid SC scale or node count");
  return std::make_shared<ScMap>(std::move(p), geometry::curve_from_json(j.at("target")));
}

}  // namespace arcmap::conformal
