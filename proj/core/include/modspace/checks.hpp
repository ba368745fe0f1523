#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "modspace/modular.hpp"
#include "modspace/point.hpp"
#include "modspace/sampler.hpp"

namespace modspace {

/// The inequality or identity a violation refers to.
enum class Condition {
  Zero,         // rho(x) = 0 iff x = 0
  Symmetry,     // rho(x) = rho(-x)
  Convexity,    // rho(a x + b y) <= rho(x) + rho(y), a + b = 1
  SConvexity,   // rho(a x + b y) <= a^s rho(x) + b^s rho(y), a^s + b^s = 1
  Contraction,  // rho(Tx - Ty) <= c rho(x - y)
  SContraction, // rho(c (Tx - Ty)) <= k^s rho(x - y)
  Fatou,        // rho(x - y) <= liminf rho(x_n - y_n)
};

const char* to_string(Condition c);

struct Violation {
  Condition condition;
  std::vector<Point> witnesses;
  std::vector<double> scalars;
  double lhs;
  double rhs;
};

/// Findings of a sampled check. `max_slack_violation` is the largest amount
/// by which any checked inequality exceeded its tolerance (0 when none did),
/// so `violations` is nonempty exactly when it is positive.
struct AxiomReport {
  std::size_t trials = 0;
  std::vector<Violation> violations;
  double max_slack_violation = 0.0;
  /// Largest observed rho(Tx - Ty) / rho(x - y); set by contraction checks.
  std::optional<double> max_ratio;

  bool passed() const { return violations.empty(); }
  std::size_t count(Condition c) const;
  void record(Violation v, double excess);
  /// Order-independent merge of a report over a disjoint trial batch.
  void merge(const AxiomReport& other);
};

/// Samples x, y and a in [0, 1] for each trial and checks the three modular
/// axioms. Axiom (1) is probed at 0, at the sampled x and at a scaled
/// coordinate axis; axiom (2) must hold bit-exactly.
AxiomReport check_modular_axioms(const ModularSpec& m, std::size_t dim, Sampler& sampler,
                                 std::size_t trials);

/// s-convexity with b = (1 - a^s)^(1/s) so that a^s + b^s = 1.
AxiomReport check_s_convexity(const ModularSpec& m, double s, std::size_t dim, Sampler& sampler,
                              std::size_t trials);

struct Delta2Estimate {
  double constant = 0.0;
  bool unbounded = false;
  /// Running maximum of rho(2x)/rho(x) after each decade 1e-3..1e3.
  std::vector<double> running_max;
};

/// Estimates sup rho(2x)/rho(x) over nonzero samples spread across the
/// magnitude decades [1e-3, 1e3). Flags the constant as unbounded when the
/// last decade still raises the running max by more than 1%. Samples with
/// rho(x) = +inf carry no information and are skipped. Throws
/// InvalidModularError on a nonzero sample with rho(x) = 0.
Delta2Estimate delta2_type_estimate(const ModularSpec& m, std::size_t dim, Sampler& sampler,
                                    std::size_t trials);

struct FatouReport {
  double lhs = 0.0;       // rho(x - y)
  double tail_min = 0.0;  // min of rho(x_n - y_n) over the last ceil(steps/2) terms
  std::size_t steps = 0;
  bool holds = true;
};

/// Finite liminf proxy for the Fatou property along x_n = x + r^n u,
/// y_n = y + r^n v, n = 1..steps.
FatouReport check_fatou_sampled(const ModularSpec& m, const Point& x, const Point& y, double ratio,
                                std::size_t steps, const Point& u, const Point& v);
FatouReport check_fatou_sampled(const ModularSpec& m, const Point& x, const Point& y, double ratio,
                                std::size_t steps, Sampler& sampler);

}  // namespace modspace
