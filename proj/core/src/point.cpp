#include "modspace/point.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "modspace/errors.hpp"

namespace modspace {

namespace {

void validate(const std::vector<double>& coords) {
  if (coords.empty()) throw UsageError("point must have at least one coordinate");
  if (!all_finite(coords)) throw NonFiniteError("point coordinate is not finite");
}

}  // namespace

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw UsageError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                     " vs " + std::to_string(b) + ")");
  }
}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) { validate(coords_); }

Point::Point(std::initializer_list<double> coords) : coords_(coords) { validate(coords_); }

Point Point::zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

Point Point::filled(std::size_t dim, double value) {
  return Point(std::vector<double>(dim, value));
}

Point Point::axis(std::size_t dim, std::size_t index, double scale) {
  std::vector<double> v(dim, 0.0);
  if (index >= dim) throw UsageError("axis index out of range");
  v[index] = scale;
  return Point(std::move(v));
}

bool Point::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](double x) { return x == 0.0; });
}

double Point::max_abs() const {
  double m = 0.0;
  for (double x : coords_) m = std::max(m, std::abs(x));
  return m;
}

Point Point::with(std::size_t i, double value) const {
  std::vector<double> v = coords_;
  v.at(i) = value;
  return Point(std::move(v));
}

Point Point::operator-() const {
  std::vector<double> v(coords_.size());
  std::transform(coords_.begin(), coords_.end(), v.begin(), [](double x) { return -x; });
  return Point(std::move(v));
}

Point operator+(const Point& a, const Point& b) {
  require_same_dim(a.dim(), b.dim(), "point addition");
  std::vector<double> v(a.dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coords_[i] + b.coords_[i];
  return Point(std::move(v));
}

Point operator-(const Point& a, const Point& b) {
  require_same_dim(a.dim(), b.dim(), "point subtraction");
  std::vector<double> v(a.dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coords_[i] - b.coords_[i];
  return Point(std::move(v));
}

Point operator*(double s, const Point& a) {
  std::vector<double> v(a.dim());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * a.coords_[i];
  return Point(std::move(v));
}

std::string Point::to_string() const {
  std::string out = "(";
  char buf[32];
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", coords_[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out + ")";
}

}  // namespace modspace
