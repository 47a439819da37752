#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arcmap/geometry/jordan_curve.hpp"
#include "arcmap/numerics/least_squares.hpp"
#include "arcmap/numerics/quadrature.hpp"

namespace arcmap::conformal {

using cplx = std::complex<double>;
using geometry::JordanCurve;
using geometry::Point2;

enum class EngineVariant { kClosedForm, kSchwarzChristoffel, kZipper };
std::string_view to_string(EngineVariant v);

/// Boundary parameters t_k in [0, 2pi), nondecreasing, with their images.
struct BoundaryTable {
  std::vector<double> t;
  std::vector<Point2> points;
};

/// Riemann map Phi: D -> Omega normalized by Phi(0) = w0, Phi'(0) > 0.
/// Immutable once built; every const member is safe to call concurrently.
class RiemannMap {
 public:
  virtual ~RiemannMap() = default;

  virtual EngineVariant variant() const = 0;
  /// Short identifier: "identity", "affine", "univalent-poly", "schwarz-christoffel", "zipper".
  virtual std::string name() const = 0;

  cplx evaluate(cplx z) const;
  cplx derivative(cplx z) const;
  /// Phi(e^{it}).
  Point2 boundary_correspondence(double t) const;
  /// Angle t in [0, 2pi) with Phi(e^{it}) closest to p. kInvalidInput when p
  /// is farther than the boundary tolerance from the target curve.
  double invert_boundary(Point2 p) const;

  cplx w0() const { return w0_; }
  const JordanCurve& target() const { return target_; }
  const BoundaryTable& boundary_table() const { return table_; }
  /// Measured boundary error of the engine (0 for closed forms).
  double boundary_residual() const { return boundary_residual_; }
  /// Absolute tolerance used when deciding that a point lies on the target.
  double boundary_tolerance() const;
  /// Angles where |Phi'| may be singular on the circle (SC prevertices).
  virtual std::vector<double> singular_angles() const { return {}; }
  /// Quality flags raised at build time ("low-resolution", "crowded", ...).
  const std::vector<std::string>& flags() const { return flags_; }

  virtual nlohmann::json to_json() const = 0;

  /// Unchecked evaluations, also valid on |z| = 1 where the engine allows it.
  virtual cplx eval(cplx z) const = 0;
  virtual cplx deriv(cplx z) const = 0;

 protected:
  virtual Point2 boundary(double t) const = 0;
  /// Fills target_ and table_ from `boundary` with `samples` equispaced angles
  /// plus `extra` angles.
  void sample_boundary_table(int samples, std::span<const double> extra = {});
  nlohmann::json common_json() const;

  cplx w0_{};
  JordanCurve target_ = JordanCurve::square();
  BoundaryTable table_;
  double boundary_residual_ = 0.0;
  std::vector<std::string> flags_;
};

using Engine = std::shared_ptr<const RiemannMap>;

struct ClosedFormSpec {
  std::string name = "identity";  // identity | affine | univalent-poly
  cplx c = 1.0;                   // affine: Phi(z) = c z + d
  cplx d = 0.0;
  cplx a = 0.0;                   // univalent-poly: Phi(z) = z + a z^2, |a| <= 1/2
};

Engine build_closed_form(const ClosedFormSpec& spec);

struct ScOptions {
  numerics::SolverSpec solver{.max_iter = 100, .residual_tol = 1e-12};
  /// Nodes per Gauss-Jacobi / Gauss-Legendre panel.
  int nodes = 24;
};

/// Schwarz-Christoffel map onto a polygon (vertices of the JordanCurve).
Engine build_schwarz_christoffel(const JordanCurve& polygon, cplx w0, const ScOptions& options = {});

struct ZipperOptions {
  /// Samples below this count build but are flagged "low-resolution".
  std::size_t min_samples = 64;
  /// Sample used as the point sent to infinity by the first map; the chain
  /// then walks the curve from there. Putting hard-to-resolve parts last
  /// keeps their crowding from leaking into the rest of the chain.
  std::size_t start = 0;
  /// A sample whose current image a has Im a <= crowding * |a| is treated as
  /// already on the axis (its slit is skipped and the sample flagged crowded).
  double crowding = 1e-14;
};

/// Geodesic zipper map onto the polygon through `closed` samples (first
/// sample repeated at the end, positively oriented).
Engine build_zipper(std::span<const Point2> closed, cplx w0, const ZipperOptions& options = {});
Engine build_zipper(const JordanCurve& curve, cplx w0, const ZipperOptions& options = {});

Engine engine_from_json(const nlohmann::json& j);

}  // namespace arcmap::conformal
