#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modspace/point.hpp"

namespace modspace {

enum class MapKind { Affine, Scalarwise };

/// One-dimensional maps applied coordinate by coordinate.
enum class ScalarMap {
  Half,            // u -> u / 2
  LogisticDamped,  // u -> lambda u / (1 + |u|)
  Const,           // u -> value
};

/// Constants of the s-convex contraction form rho(c (Tx - Ty)) <= k^s rho(x - y).
struct SContraction {
  double c;
  double k;
  double s;
};

/// A self-map T of R^d: either x -> A x + b or a scalar map per coordinate.
class MapSpec {
 public:
  /// `matrix` is row-major d x d.
  static MapSpec affine(std::vector<std::vector<double>> matrix, Point offset);
  static MapSpec half();
  static MapSpec logistic_damped(double lambda);
  static MapSpec constant(double value);

  MapKind kind() const { return kind_; }
  ScalarMap scalar() const { return scalar_; }
  double parameter() const { return param_; }
  std::span<const double> matrix() const { return matrix_; }
  const std::optional<Point>& offset() const { return offset_; }

  std::optional<std::size_t> fixed_dim() const;
  void check_dim(std::size_t dim) const;

  /// Claimed constant c in [0, 1) for rho(Tx - Ty) <= c rho(x - y).
  const std::optional<double>& claimed_c() const { return c_claimed_; }
  MapSpec& with_claimed_c(double c);
  const std::optional<SContraction>& claimed_s_contraction() const { return s_claimed_; }
  MapSpec& with_claimed_s_contraction(SContraction constants);

  /// T applied `times` times. Overflow is left in the result for the caller
  /// to detect.
  std::vector<double> apply(std::span<const double> x, std::size_t times = 1) const;

  /// T(x) as a Point; throws NonFiniteError on overflow.
  Point operator()(const Point& x) const;

  std::string describe() const;

 private:
  MapSpec() = default;
  void apply_once(std::span<const double> in, std::span<double> out) const;

  MapKind kind_ = MapKind::Scalarwise;
  ScalarMap scalar_ = ScalarMap::Half;
  double param_ = 0.0;
  std::size_t dim_ = 0;
  std::vector<double> matrix_;
  std::optional<Point> offset_;
  std::optional<double> c_claimed_;
  std::optional<SContraction> s_claimed_;
};

const char* to_string(ScalarMap s);

}  // namespace modspace
