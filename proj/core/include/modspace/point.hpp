#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace modspace {

/// A vector of the discretized modular space. Always has at least one
/// coordinate and every coordinate is finite; arithmetic that would leave
/// the finite reals throws NonFiniteError.
class Point {
 public:
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zeros(std::size_t dim);
  static Point filled(std::size_t dim, double value);
  static Point axis(std::size_t dim, std::size_t index, double scale = 1.0);

  std::size_t dim() const { return coords_.size(); }
  std::span<const double> coords() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;
  double max_abs() const;

  /// Copy with coordinate i replaced.
  Point with(std::size_t i, double value) const;

  Point operator-() const;
  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  friend Point operator*(double s, const Point& a);

  bool operator==(const Point&) const = default;

  std::string to_string() const;

 private:
  std::vector<double> coords_;
};

bool all_finite(std::span<const double> v);

/// Throws UsageError unless a and b have the same dimension.
void require_same_dim(std::size_t a, std::size_t b, const char* what);

}  // namespace modspace
