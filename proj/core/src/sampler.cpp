#include "modspace/sampler.hpp"

#include <cmath>
#include <vector>

namespace modspace {

double Sampler::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Sampler::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Sampler::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

bool Sampler::coin() { return (engine_() >> 63) != 0; }

double Sampler::coordinate() {
  if (coin()) return uniform(-1.0, 1.0);
  const double magnitude = std::pow(10.0, uniform(-3.0, 3.0));
  return coin() ? magnitude : -magnitude;
}

Point Sampler::point(std::size_t dim) {
  std::vector<double> v(dim);
  bool nonzero = false;
  while (!nonzero) {
    for (double& x : v) {
      x = coordinate();
      nonzero = nonzero || x != 0.0;
    }
  }
  return Point(std::move(v));
}

Point Sampler::point_at_scale(std::size_t dim, double lo_exp, double hi_exp) {
  std::vector<double> v(dim);
  bool nonzero = false;
  while (!nonzero) {
    const double scale = std::pow(10.0, uniform(lo_exp, hi_exp));
    for (double& x : v) {
      x = scale * uniform(-1.0, 1.0);
      nonzero = nonzero || x != 0.0;
    }
  }
  return Point(std::move(v));
}

std::pair<Point, Point> Sampler::pair(std::size_t dim) {
  Point x = point(dim);
  if (index(4) == 0) {
    double step = 0.0;
    while (step == 0.0) step = coordinate();
    const std::size_t axis = index(dim);
    return {x, x.with(axis, x[axis] + step)};
  }
  return {std::move(x), point(dim)};
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace modspace
