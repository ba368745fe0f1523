#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace modspace {

inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Slack allowed when comparing quantities of the given magnitude.
inline double tolerance_for(double magnitude) {
  if (!std::isfinite(magnitude)) return 0.0;
  return kRelTol * std::abs(magnitude) + kAbsTol;
}

/// lhs <= rhs up to the numeric tolerance. +inf on the right always holds,
/// +inf on the left (with finite right) never does.
inline bool leq_tol(double lhs, double rhs) {
  if (rhs == kInf) return true;
  if (lhs == kInf) return false;
  return lhs <= rhs + tolerance_for(std::max(std::abs(lhs), std::abs(rhs)));
}

/// Amount by which lhs exceeds rhs beyond tolerance; <= 0 when leq_tol holds.
inline double excess_over(double lhs, double rhs) {
  if (rhs == kInf) return -kInf;
  if (lhs == kInf) return kInf;
  return lhs - rhs - tolerance_for(std::max(std::abs(lhs), std::abs(rhs)));
}

}  // namespace modspace
