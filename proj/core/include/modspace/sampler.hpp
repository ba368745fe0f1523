#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

#include "modspace/point.hpp"

namespace modspace {

/// Seeded point generator used by every randomized checker.
///
/// Coordinates come from an even mixture of uniform[-1, 1] and signed
/// log-uniform magnitudes in [1e-3, 1e3]. The engine is mt19937_64, whose
/// output sequence is fixed by the standard, and real variates are built
/// directly from its bits, so a seed reproduces the same draws everywhere.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  std::size_t index(std::size_t n);
  bool coin();

  double coordinate();

  /// Mixture coordinates; never the zero vector.
  Point point(std::size_t dim);

  /// Direction in [-1, 1]^dim scaled by 10^e with e uniform in [lo_exp, hi_exp).
  Point point_at_scale(std::size_t dim, double lo_exp, double hi_exp);

  /// Pair of distinct points. One draw in four differs along a single axis,
  /// which exposes operator-norm extremes of coordinate-separable modulars.
  std::pair<Point, Point> pair(std::size_t dim);

 private:
  std::mt19937_64 engine_;
};

/// Independent stream seed derived from a base seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace modspace
