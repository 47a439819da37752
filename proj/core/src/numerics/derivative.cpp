#include "arcmap/numerics/derivative.hpp"

#include <cmath>
#include <numbers>

#include "arcmap/error.hpp"

namespace arcmap::numerics {

std::complex<double> complex_derivative(const DiskFunction& f, std::complex<double> z, std::optional<double> rho,
                                        int nodes) {
  const double margin = 1.0 - std::abs(z);
  require(margin > 0.0, "complex_derivative: z must lie in the open unit disk");
  const double r = rho.value_or(0.5 * margin);
  require(r > 0.0 && r < margin, "complex_derivative: radius must satisfy 0 < rho < 1 - |z|");
  require(nodes >= 2, "complex_derivative: need at least two circle nodes");

  // f'(z) = (1/2 pi i) \oint f(w) / (w - z)^2 dw with w = z + r e^{i theta}.
  std::complex<double> sum = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const std::complex<double> unit = std::polar(1.0, 2.0 * std::numbers::pi * k / nodes);
    sum += f(z + r * unit) / unit;
  }
  return sum / (static_cast<double>(nodes) * r);
}

}  // namespace arcmap::numerics
