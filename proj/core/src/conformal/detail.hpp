#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <nlohmann/json.hpp>

#include "arcmap/conformal/engine.hpp"
#include "arcmap/error.hpp"

namespace arcmap::conformal::detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double wrap_angle(double t) {
  double u = std::fmod(t, kTwoPi);
  if (u < 0.0) u += kTwoPi;
  if (u >= kTwoPi) u = 0.0;
  return u;
}

inline nlohmann::json to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline cplx cplx_from_json(const nlohmann::json& j) {
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
          "engine json: complex values are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

/// Rejects keys outside `allowed`.
void check_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed);

Engine closed_form_from_json(const nlohmann::json& j);
Engine schwarz_christoffel_from_json(const nlohmann::json& j);
Engine zipper_from_json(const nlohmann::json& j);

}  // namespace arcmap::conformal::detail
