#include "modspace/checks.hpp"

#include <algorithm>
#include <cmath>

#include "modspace/errors.hpp"
#include "modspace/tolerance.hpp"

namespace modspace {

const char* to_string(Condition c) {
  switch (c) {
    case Condition::Zero:
      return "zero";
    case Condition::Symmetry:
      return "symmetry";
    case Condition::Convexity:
      return "convexity";
    case Condition::SConvexity:
      return "s_convexity";
    case Condition::Contraction:
      return "contraction";
    case Condition::SContraction:
      return "s_contraction";
    case Condition::Fatou:
      return "fatou";
  }
  return "?";
}

std::size_t AxiomReport::count(Condition c) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [c](const Violation& v) { return v.condition == c; }));
}

void AxiomReport::record(Violation v, double excess) {
  violations.push_back(std::move(v));
  max_slack_violation = std::max(max_slack_violation, excess);
}

void AxiomReport::merge(const AxiomReport& other) {
  trials += other.trials;
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
  max_slack_violation = std::max(max_slack_violation, other.max_slack_violation);
  if (other.max_ratio) max_ratio = std::max(max_ratio.value_or(0.0), *other.max_ratio);
}

AxiomReport check_modular_axioms(const ModularSpec& m, std::size_t dim, Sampler& sampler,
                                 std::size_t trials) {
  m.check_dim(dim);
  if (trials < 1) throw UsageError("trials must be >= 1");
  AxiomReport report;
  report.trials = trials;

  const Point origin = Point::zeros(dim);
  if (const double r0 = eval(m, origin); r0 != 0.0) {
    report.record({Condition::Zero, {origin}, {}, r0, 0.0}, r0);
  }

  for (std::size_t t = 0; t < trials; ++t) {
    const Point x = sampler.point(dim);
    const Point y = sampler.point(dim);
    const double a = sampler.uniform();
    const double b = 1.0 - a;

    for (const Point& probe : {x, Point::axis(dim, t % dim, x.max_abs())}) {
      if (eval(m, probe) == 0.0) {
        report.record({Condition::Zero, {probe}, {}, 0.0, 0.0}, probe.max_abs());
      }
    }

    const double rx = eval(m, x);
    const double rnx = eval(m, -x);
    if (rx != rnx) {
      const double gap = (std::isinf(rx) || std::isinf(rnx)) ? kInf : std::abs(rx - rnx);
      report.record({Condition::Symmetry, {x}, {}, rx, rnx}, gap);
    }

    const double lhs = eval(m, a * x + b * y);
    const double rhs = rx + eval(m, y);
    if (const double e = excess_over(lhs, rhs); e > 0.0) {
      report.record({Condition::Convexity, {x, y}, {a, b}, lhs, rhs}, e);
    }
  }
  return report;
}

AxiomReport check_s_convexity(const ModularSpec& m, double s, std::size_t dim, Sampler& sampler,
                              std::size_t trials) {
  if (!(s > 0.0 && s <= 1.0)) throw UsageError("s must lie in (0, 1]");
  m.check_dim(dim);
  if (trials < 1) throw UsageError("trials must be >= 1");
  AxiomReport report;
  report.trials = trials;

  for (std::size_t t = 0; t < trials; ++t) {
    const Point x = sampler.point(dim);
    const Point y = sampler.point(dim);
    const double a = sampler.uniform();
    const double as = std::pow(a, s);
    const double b = std::pow(std::max(0.0, 1.0 - as), 1.0 / s);
    const double bs = std::pow(b, s);

    const double lhs = eval(m, a * x + b * y);
    const double rx = eval(m, x);
    const double ry = eval(m, y);
    // 0 * inf must not poison the bound when a weight vanishes.
    const double rhs = (as == 0.0 ? 0.0 : as * rx) + (bs == 0.0 ? 0.0 : bs * ry);
    if (const double e = excess_over(lhs, rhs); e > 0.0) {
      report.record({Condition::SConvexity, {x, y}, {a, b, s}, lhs, rhs}, e);
    }
  }
  return report;
}

Delta2Estimate delta2_type_estimate(const ModularSpec& m, std::size_t dim, Sampler& sampler,
                                    std::size_t trials) {
  m.check_dim(dim);
  if (trials < 1) throw UsageError("trials must be >= 1");
  constexpr int kFirstDecade = -3;
  constexpr int kDecades = 6;

  Delta2Estimate est;
  double running = 0.0;
  for (int d = 0; d < kDecades; ++d) {
    const std::size_t share =
        std::max<std::size_t>(1, trials / kDecades + (static_cast<std::size_t>(d) < trials % kDecades));
    const double lo = kFirstDecade + d;
    for (std::size_t i = 0; i < share; ++i) {
      const Point x = sampler.point_at_scale(dim, lo, lo + 1.0);
      const double r = eval(m, x);
      if (r == 0.0) {
        throw InvalidModularError("rho vanishes at nonzero " + x.to_string() + " for " +
                                  m.describe());
      }
      if (r == kInf) continue;
      const double r2 = eval_scaled(m, x, 2.0);
      running = std::max(running, r2 == kInf ? kInf : r2 / r);
    }
    est.running_max.push_back(running);
  }
  est.constant = running;
  const double before_last = est.running_max[kDecades - 2];
  est.unbounded = running == kInf || running > 1.01 * before_last;
  return est;
}

FatouReport check_fatou_sampled(const ModularSpec& m, const Point& x, const Point& y, double ratio,
                                std::size_t steps, const Point& u, const Point& v) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw UsageError("ratio must lie in (0, 1)");
  if (steps < 1) throw UsageError("steps must be >= 1");
  const std::size_t dim = x.dim();
  m.check_dim(dim);
  require_same_dim(dim, y.dim(), "fatou y");
  require_same_dim(dim, u.dim(), "fatou u");
  require_same_dim(dim, v.dim(), "fatou v");

  FatouReport rep;
  rep.steps = steps;
  rep.lhs = distance(m, x, y);
  rep.tail_min = kInf;

  const std::size_t tail_from = steps - (steps + 1) / 2 + 1;
  std::vector<double> diff(dim);
  double scale = 1.0;
  for (std::size_t n = 1; n <= steps; ++n) {
    scale *= ratio;
    if (n < tail_from) continue;
    for (std::size_t i = 0; i < dim; ++i) {
      diff[i] = (x[i] + scale * u[i]) - (y[i] + scale * v[i]);
    }
    rep.tail_min = std::min(rep.tail_min, eval(m, diff));
  }
  rep.holds = leq_tol(rep.lhs, rep.tail_min);
  return rep;
}

FatouReport check_fatou_sampled(const ModularSpec& m, const Point& x, const Point& y, double ratio,
                                std::size_t steps, Sampler& sampler) {
  const Point u = sampler.point(x.dim());
  const Point v = sampler.point(x.dim());
  return check_fatou_sampled(m, x, y, ratio, steps, u, v);
}

}  // namespace modspace
