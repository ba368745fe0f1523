#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modspace/point.hpp"

namespace modspace {

enum class Family { PPower, Orlicz, WeightedSum, Planted };

/// Young-type integrands for the Orlicz family.
enum class Integrand {
  Power,        // u^p
  ExpMinusOne,  // e^u - 1
  ULog,         // u log(1 + u)
};

/// Functionals that deliberately break one modular axiom. They exist so the
/// checkers can be shown to find violations.
enum class PlantedKind {
  SinBump,     // sum |sin(pi x_i)| + |x_i|/10, breaks the convexity axiom
  Asymmetric,  // sum max(x_i, 0) + 2 max(-x_i, 0), breaks symmetry
  ZeroWeight,  // sum_{i>=1} |x_i|, vanishes on the first axis
};

/// Tagged description of a modular functional on R^d.
///
///   PPOWER        rho(x) = sum_i |x_i|^p                    p > 0
///   WEIGHTED_SUM  rho(x) = sum_i w_i |x_i|^p                p > 0, all w_i > 0
///   ORLICZ        rho(f) = (1/N) sum_i phi(|f_i|)           midpoint rule on [0,1]
///
/// Values live in [0, +inf]; overflow is reported as +inf.
class ModularSpec {
 public:
  static ModularSpec ppower(double p);
  static ModularSpec weighted_sum(double p, std::vector<double> weights);
  static ModularSpec orlicz(Integrand phi, std::size_t quadrature_nodes, double p = 1.0);
  static ModularSpec planted(PlantedKind kind);

  Family family() const { return family_; }
  double p() const { return p_; }
  Integrand integrand() const { return phi_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t quadrature_nodes() const { return nodes_; }
  PlantedKind planted_kind() const { return planted_; }

  /// Dimension forced by the parameters (Orlicz nodes, weight count), if any.
  std::optional<std::size_t> fixed_dim() const;
  /// Throws UsageError if vectors of this dimension are not admissible.
  void check_dim(std::size_t dim) const;

  /// 2^p for the pure power families, where rho(2x) = 2^p rho(x) identically.
  std::optional<double> exact_delta2() const;

  /// True for the functionals expected to satisfy every modular axiom.
  bool is_valid_modular() const { return family_ != Family::Planted; }

  std::string describe() const;

  bool operator==(const ModularSpec&) const = default;

 private:
  ModularSpec() = default;

  Family family_ = Family::PPower;
  double p_ = 1.0;
  Integrand phi_ = Integrand::Power;
  std::vector<double> weights_;
  std::size_t nodes_ = 0;
  PlantedKind planted_ = PlantedKind::SinBump;
};

/// rho(x). Accepts raw spans so that callers can evaluate on vectors that
/// have overflowed; a non-finite coordinate contributes +inf.
double eval(const ModularSpec& m, std::span<const double> x);
double eval(const ModularSpec& m, const Point& x);

/// rho(scale * x) without materializing a Point.
double eval_scaled(const ModularSpec& m, const Point& x, double scale);

/// rho(a - b).
double distance(const ModularSpec& m, const Point& a, const Point& b);
double distance(const ModularSpec& m, std::span<const double> a, std::span<const double> b);

/// F-norm inf{t > 0 : rho(x / t) <= t}, located by bisection on
/// g(t) = rho(x / t) - t, which is strictly decreasing. The upper bracket is
/// found by doubling from t = 1 (at most 200 times, else DivergenceError);
/// bisection stops after 128 halvings or once the bracket is within tol.
double f_norm(const ModularSpec& m, const Point& x, double tol);

const char* to_string(Family f);
const char* to_string(Integrand phi);
const char* to_string(PlantedKind k);

}  // namespace modspace
