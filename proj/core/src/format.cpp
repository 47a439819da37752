#include "arcmap/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "arcmap/error.hpp"

namespace arcmap {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) fail(ErrorKind::kIoError, "format_double: conversion failed");
  return {buf.data(), end};
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kResolutionExhausted: return "resolution-exhausted";
    case ErrorKind::kResourceLimit: return "resource-limit";
    case ErrorKind::kAccuracyNotReached: return "accuracy-not-reached";
    case ErrorKind::kSolverDiverged: return "solver-diverged";
    case ErrorKind::kBuildDegenerate: return "build-degenerate";
    case ErrorKind::kIoError: return "io-error";
  }
  return "unknown";
}

}  // namespace arcmap
