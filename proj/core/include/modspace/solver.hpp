#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "modspace/checks.hpp"
#include "modspace/errors.hpp"
#include "modspace/map.hpp"
#include "modspace/modular.hpp"
#include "modspace/point.hpp"
#include "modspace/sampler.hpp"

namespace modspace {

/// Samples pairs and checks rho(Tx - Ty) <= c rho(x - y). The report also
/// carries the largest observed ratio, an empirical lower bound on the best
/// constant (never a proof of contraction).
AxiomReport verify_contraction(const MapSpec& map, const ModularSpec& m, double c,
                               std::size_t dim, Sampler& sampler, std::size_t trials);

/// Largest rho(Tx - Ty) / rho(x - y) over sampled pairs; used to fill in c
/// when none is claimed. Draws the same pairs as verify_contraction for the
/// same sampler state.
double empirical_contraction_ratio(const MapSpec& map, const ModularSpec& m, std::size_t dim,
                                   Sampler& sampler, std::size_t trials);

/// Samples pairs and checks rho(c (Tx - Ty)) <= k^s rho(x - y), c > max{1, k}.
AxiomReport verify_s_contraction(const MapSpec& map, const ModularSpec& m, double c, double k,
                                 double s, std::size_t dim, Sampler& sampler,
                                 std::size_t trials);

struct OrbitBound {
  double sup = 0.0;
  /// The running max did not grow (beyond tolerance) over the last ceil(N/2) steps.
  bool stabilized = false;
  std::size_t argmax = 0;
};

/// sup_{1<=n<=N} rho(2 T^n omega). Overflow yields sup = +inf, unstabilized.
OrbitBound orbit_bound_check(const MapSpec& map, const ModularSpec& m, const Point& omega,
                             std::size_t n_steps);

struct IterationStep {
  std::size_t n;
  Point x;
  double step_mod;       // rho(x_n - x_{n-1}); NaN at n = 0
  double residual;       // rho(S x_n - x_n) for the iterated map S
  double doubled_orbit;  // rho(2 x_n)
};

struct IterationTrace {
  std::vector<IterationStep> steps;
  bool converged = false;
  std::optional<Point> fixed_point;
  /// The iterated map is T^map_power.
  std::size_t map_power = 1;
  /// Delta2-type constant used to choose map_power, when the power path ran.
  std::optional<double> delta2_constant;

  std::size_t iterations() const { return steps.empty() ? 0 : steps.back().n; }
};

/// Picard iteration failed: some iterate left the finite reals. Carries
/// every step recorded up to that point.
class PicardDivergence : public DivergenceError {
 public:
  PicardDivergence(const std::string& what, IterationTrace partial)
      : DivergenceError(what), trace_(std::move(partial)) {}
  const IterationTrace& trace() const { return trace_; }

 private:
  IterationTrace trace_;
};

/// x_{n+1} = T x_n from x0. Stops at the first n >= 1 with both
/// rho(x_n - x_{n-1}) <= tol and rho(T x_n - x_n) <= tol, or after max_iter
/// applications. max_iter = 0 returns a trace holding only x0.
IterationTrace picard_solve(const MapSpec& map, const ModularSpec& m, const Point& x0, double tol,
                            std::size_t max_iter);

/// Smallest n >= 1 with c^n k < 1/2.
std::size_t power_index(double c, double k);

struct PowerSolveOptions {
  std::uint64_t seed = 0;
  std::size_t delta2_trials = 6000;
};

/// Delta2-type constant for solve_via_power: exact 2^p where the family
/// admits it, otherwise the sampled estimate. Throws NotApplicableError when
/// the estimate is flagged unbounded.
double delta2_constant_for(const ModularSpec& m, std::size_t dim, const PowerSolveOptions& opts);

/// Runs Picard iteration on T^n with n = power_index(c, k), then checks that
/// the limit is also fixed by T itself (InconsistencyError otherwise).
IterationTrace solve_via_power(const MapSpec& map, const ModularSpec& m, double c, const Point& x0,
                               double tol, std::size_t max_iter,
                               const PowerSolveOptions& opts = {});

}  // namespace modspace
