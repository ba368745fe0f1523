#include "modspace/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "modspace/tolerance.hpp"

namespace modspace {

namespace {

void require_trials(std::size_t trials) {
  if (trials < 1) throw UsageError("trials must be >= 1");
}

std::vector<double> doubled(std::span<const double> x) {
  std::vector<double> v(x.begin(), x.end());
  for (double& c : v) c *= 2.0;
  return v;
}

IterationStep make_step(std::size_t n, std::span<const double> x, double step_mod, double residual,
                        const ModularSpec& m) {
  return {n, Point(std::vector<double>(x.begin(), x.end())), step_mod, residual,
          eval(m, doubled(x))};
}

/// Picard iteration of S = T^power.
IterationTrace picard_run(const MapSpec& map, const ModularSpec& m, const Point& x0, double tol,
                          std::size_t max_iter, std::size_t power) {
  if (!(tol > 0.0)) throw UsageError("tolerance must be > 0");
  m.check_dim(x0.dim());
  map.check_dim(x0.dim());

  IterationTrace trace;
  trace.map_power = power;

  auto diverged = [&](std::size_t n) {
    throw PicardDivergence("iterate " + std::to_string(n) + " of " + map.describe() +
                               " is not finite",
                           std::move(trace));
  };

  std::vector<double> x(x0.coords().begin(), x0.coords().end());
  std::vector<double> next = map.apply(x, power);
  if (!all_finite(next)) {
    trace.steps.push_back(make_step(0, x, std::numeric_limits<double>::quiet_NaN(), kInf, m));
    diverged(1);
  }
  trace.steps.push_back(
      make_step(0, x, std::numeric_limits<double>::quiet_NaN(), distance(m, next, x), m));

  for (std::size_t n = 1; n <= max_iter; ++n) {
    std::vector<double> prev = std::move(x);
    x = std::move(next);
    next = map.apply(x, power);
    const double step = distance(m, x, prev);
    if (!all_finite(next)) {
      trace.steps.push_back(make_step(n, x, step, kInf, m));
      diverged(n + 1);
    }
    const double residual = distance(m, next, x);
    trace.steps.push_back(make_step(n, x, step, residual, m));
    if (step <= tol && residual <= tol) {
      trace.converged = true;
      trace.fixed_point = trace.steps.back().x;
      break;
    }
  }
  return trace;
}

}  // namespace

AxiomReport verify_contraction(const MapSpec& map, const ModularSpec& m, double c,
                               std::size_t dim, Sampler& sampler, std::size_t trials) {
  if (!(c >= 0.0 && c < 1.0)) throw UsageError("contraction constant must lie in [0, 1)");
  require_trials(trials);
  m.check_dim(dim);
  map.check_dim(dim);

  AxiomReport report;
  report.trials = trials;
  double max_ratio = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto [x, y] = sampler.pair(dim);
    const double lhs = distance(m, map.apply(x.coords()), map.apply(y.coords()));
    const double d = distance(m, x, y);
    const double rhs = c == 0.0 ? 0.0 : c * d;
    if (d > 0.0 && std::isfinite(d)) max_ratio = std::max(max_ratio, lhs / d);
    if (const double e = excess_over(lhs, rhs); e > 0.0) {
      report.record({Condition::Contraction, {x, y}, {c}, lhs, rhs}, e);
    }
  }
  report.max_ratio = max_ratio;
  return report;
}

double empirical_contraction_ratio(const MapSpec& map, const ModularSpec& m, std::size_t dim,
                                   Sampler& sampler, std::size_t trials) {
  require_trials(trials);
  m.check_dim(dim);
  map.check_dim(dim);
  double max_ratio = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto [x, y] = sampler.pair(dim);
    const double d = distance(m, x, y);
    if (!(d > 0.0 && std::isfinite(d))) continue;
    max_ratio = std::max(max_ratio, distance(m, map.apply(x.coords()), map.apply(y.coords())) / d);
  }
  return max_ratio;
}

AxiomReport verify_s_contraction(const MapSpec& map, const ModularSpec& m, double c, double k,
                                 double s, std::size_t dim, Sampler& sampler,
                                 std::size_t trials) {
  if (!(c > std::max(1.0, k))) throw UsageError("s-contraction needs c > max{1, k}");
  if (!(k > 0.0)) throw UsageError("s-contraction needs k > 0");
  if (!(s > 0.0 && s <= 1.0)) throw UsageError("s must lie in (0, 1]");
  require_trials(trials);
  m.check_dim(dim);
  map.check_dim(dim);

  const double ks = std::pow(k, s);
  AxiomReport report;
  report.trials = trials;
  double max_ratio = 0.0;
  std::vector<double> scaled(dim);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto [x, y] = sampler.pair(dim);
    const auto tx = map.apply(x.coords());
    const auto ty = map.apply(y.coords());
    for (std::size_t i = 0; i < dim; ++i) scaled[i] = c * (tx[i] - ty[i]);
    const double lhs = eval(m, scaled);
    const double d = distance(m, x, y);
    if (d > 0.0 && std::isfinite(d)) max_ratio = std::max(max_ratio, lhs / d);
    if (const double e = excess_over(lhs, ks * d); e > 0.0) {
      report.record({Condition::SContraction, {x, y}, {c, k, s}, lhs, ks * d}, e);
    }
  }
  report.max_ratio = max_ratio;
  return report;
}

OrbitBound orbit_bound_check(const MapSpec& map, const ModularSpec& m, const Point& omega,
                             std::size_t n_steps) {
  if (n_steps < 2) throw UsageError("orbit bound needs N >= 2");
  m.check_dim(omega.dim());
  map.check_dim(omega.dim());

  OrbitBound out;
  std::size_t last_growth = 0;
  std::vector<double> x(omega.coords().begin(), omega.coords().end());
  for (std::size_t n = 1; n <= n_steps; ++n) {
    x = map.apply(x);
    const double value = all_finite(x) ? eval(m, doubled(x)) : kInf;
    if (value == kInf) return {kInf, false, n};
    if (n == 1 || value > out.sup + tolerance_for(out.sup)) last_growth = n;
    if (n == 1 || value > out.sup) {
      out.sup = value;
      out.argmax = n;
    }
  }
  out.stabilized = last_growth <= n_steps - (n_steps + 1) / 2;
  return out;
}

IterationTrace picard_solve(const MapSpec& map, const ModularSpec& m, const Point& x0, double tol,
                            std::size_t max_iter) {
  return picard_run(map, m, x0, tol, max_iter, 1);
}

std::size_t power_index(double c, double k) {
  if (!(c >= 0.0 && c < 1.0)) throw UsageError("power_index: c must lie in [0, 1)");
  if (std::isinf(k)) throw NotApplicableError("power_index: Delta2-type constant is unbounded");
  if (!(k > 0.0)) throw UsageError("power_index: k must be > 0");
  if (c == 0.0 || c * k < 0.5) return 1;

  auto below = [&](std::size_t n) { return std::pow(c, static_cast<double>(n)) * k < 0.5; };
  const double guess = std::ceil(std::log(0.5 / k) / std::log(c));
  std::size_t n = guess > 1.0 ? static_cast<std::size_t>(guess) : 1;
  while (!below(n)) ++n;
  while (n > 1 && below(n - 1)) --n;
  return n;
}

double delta2_constant_for(const ModularSpec& m, std::size_t dim, const PowerSolveOptions& opts) {
  if (auto exact = m.exact_delta2()) return *exact;
  Sampler sampler(opts.seed);
  const Delta2Estimate est = delta2_type_estimate(m, dim, sampler, opts.delta2_trials);
  if (est.unbounded) {
    throw NotApplicableError(m.describe() + " has no bounded Delta2-type constant");
  }
  return est.constant;
}

IterationTrace solve_via_power(const MapSpec& map, const ModularSpec& m, double c, const Point& x0,
                               double tol, std::size_t max_iter, const PowerSolveOptions& opts) {
  const double k = delta2_constant_for(m, x0.dim(), opts);
  const std::size_t n = power_index(c, k);
  IterationTrace trace = picard_run(map, m, x0, tol, max_iter, n);
  trace.delta2_constant = k;
  if (trace.converged) {
    const Point& fixed = *trace.fixed_point;
    const double residual = distance(m, map.apply(fixed.coords()), fixed.coords());
    if (!leq_tol(residual, tol)) {
      throw InconsistencyError("fixed point of T^" + std::to_string(n) +
                               " is not fixed by T (residual " + std::to_string(residual) +
                               "); the contraction claim is false");
    }
  }
  return trace;
}

}  // namespace modspace
