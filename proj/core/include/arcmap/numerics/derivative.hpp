#pragma once

#include <complex>
#include <functional>
#include <optional>

namespace arcmap::numerics {

using DiskFunction = std::function<std::complex<double>(std::complex<double>)>;

inline constexpr int kDefaultCircleNodes = 64;

/// f'(z) from the Cauchy integral over |w - z| = rho, M-point trapezoid.
/// rho defaults to (1 - |z|) / 2; rho >= 1 - |z| is invalid input.
std::complex<double> complex_derivative(const DiskFunction& f, std::complex<double> z,
                                        std::optional<double> rho = std::nullopt,
                                        int nodes = kDefaultCircleNodes);

}  // namespace arcmap::numerics
