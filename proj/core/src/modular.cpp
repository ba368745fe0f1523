#include "modspace/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "modspace/errors.hpp"
#include "modspace/tolerance.hpp"

namespace modspace {

namespace {

double power_term(double u, double p) {
  if (p == 1.0) return u;
  if (p == 2.0) return u * u;
  return std::pow(u, p);
}

double integrand(Integrand phi, double p, double u) {
  switch (phi) {
    case Integrand::Power:
      return power_term(u, p);
    case Integrand::ExpMinusOne:
      return std::expm1(u);
    case Integrand::ULog:
      return u == kInf ? kInf : u * std::log1p(u);
  }
  return kInf;
}

double planted_term(PlantedKind kind, std::size_t i, double x) {
  switch (kind) {
    case PlantedKind::SinBump: {
      const double u = std::abs(x);
      return std::abs(std::sin(std::numbers::pi * u)) + u / 10.0;
    }
    case PlantedKind::Asymmetric:
      return std::max(x, 0.0) + 2.0 * std::max(-x, 0.0);
    case PlantedKind::ZeroWeight:
      return i == 0 ? 0.0 : std::abs(x);
  }
  return kInf;
}

void require_positive_exponent(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw UsageError("exponent p must be finite and > 0");
}

}  // namespace

ModularSpec ModularSpec::ppower(double p) {
  require_positive_exponent(p);
  ModularSpec m;
  m.family_ = Family::PPower;
  m.p_ = p;
  return m;
}

ModularSpec ModularSpec::weighted_sum(double p, std::vector<double> weights) {
  require_positive_exponent(p);
  if (weights.empty()) throw UsageError("weighted sum needs at least one weight");
  // A zero weight lets a nonzero vector have zero modular.
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw UsageError("weights must be finite and > 0");
  }
  ModularSpec m;
  m.family_ = Family::WeightedSum;
  m.p_ = p;
  m.weights_ = std::move(weights);
  return m;
}

ModularSpec ModularSpec::orlicz(Integrand phi, std::size_t quadrature_nodes, double p) {
  if (quadrature_nodes < 1) throw UsageError("quadrature_nodes must be >= 1");
  if (phi == Integrand::Power) require_positive_exponent(p);
  ModularSpec m;
  m.family_ = Family::Orlicz;
  m.phi_ = phi;
  m.p_ = phi == Integrand::Power ? p : 1.0;
  m.nodes_ = quadrature_nodes;
  return m;
}

ModularSpec ModularSpec::planted(PlantedKind kind) {
  ModularSpec m;
  m.family_ = Family::Planted;
  m.planted_ = kind;
  return m;
}

std::optional<std::size_t> ModularSpec::fixed_dim() const {
  switch (family_) {
    case Family::Orlicz:
      return nodes_;
    case Family::WeightedSum:
      return weights_.size();
    default:
      return std::nullopt;
  }
}

void ModularSpec::check_dim(std::size_t dim) const {
  if (dim == 0) throw UsageError("dimension must be >= 1");
  if (auto fixed = fixed_dim()) require_same_dim(*fixed, dim, describe().c_str());
}

std::optional<double> ModularSpec::exact_delta2() const {
  if (family_ == Family::PPower || family_ == Family::WeightedSum) return std::exp2(p_);
  return std::nullopt;
}

std::string ModularSpec::describe() const {
  switch (family_) {
    case Family::PPower:
      return "PPOWER(p=" + std::to_string(p_) + ")";
    case Family::WeightedSum:
      return "WEIGHTED_SUM(p=" + std::to_string(p_) + ", n=" + std::to_string(weights_.size()) +
             ")";
    case Family::Orlicz: {
      std::string phi = to_string(phi_);
      if (phi_ == Integrand::Power) phi += "(" + std::to_string(p_) + ")";
      return "ORLICZ(" + phi + ", N_q=" + std::to_string(nodes_) + ")";
    }
    case Family::Planted:
      return std::string("PLANTED(") + to_string(planted_) + ")";
  }
  return "?";
}

double eval(const ModularSpec& m, std::span<const double> x) {
  m.check_dim(x.size());
  double sum = 0.0;
  switch (m.family()) {
    case Family::PPower:
      for (double xi : x) sum += power_term(std::abs(xi), m.p());
      break;
    case Family::WeightedSum: {
      const auto w = m.weights();
      for (std::size_t i = 0; i < x.size(); ++i) sum += w[i] * power_term(std::abs(x[i]), m.p());
      break;
    }
    case Family::Orlicz:
      for (double xi : x) sum += integrand(m.integrand(), m.p(), std::abs(xi));
      sum /= static_cast<double>(m.quadrature_nodes());
      break;
    case Family::Planted:
      for (std::size_t i = 0; i < x.size(); ++i) sum += planted_term(m.planted_kind(), i, x[i]);
      break;
  }
  // inf - inf cannot occur (all terms are >= 0) but NaN inputs can.
  return std::isnan(sum) ? kInf : sum;
}

double eval(const ModularSpec& m, const Point& x) { return eval(m, x.coords()); }

double eval_scaled(const ModularSpec& m, const Point& x, double scale) {
  std::vector<double> v(x.coords().begin(), x.coords().end());
  for (double& c : v) c *= scale;
  return eval(m, v);
}

double distance(const ModularSpec& m, std::span<const double> a, std::span<const double> b) {
  require_same_dim(a.size(), b.size(), "modular distance");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a[i] - b[i];
  return eval(m, d);
}

double distance(const ModularSpec& m, const Point& a, const Point& b) {
  return distance(m, a.coords(), b.coords());
}

double f_norm(const ModularSpec& m, const Point& x, double tol) {
  if (!(tol > 0.0)) throw UsageError("f_norm tolerance must be > 0");
  m.check_dim(x.dim());
  if (x.is_zero()) return 0.0;

  auto g = [&](double t) { return eval_scaled(m, x, 1.0 / t) - t; };

  double lo = 0.0;
  double hi = 1.0;
  int doublings = 0;
  while (g(hi) > 0.0) {
    if (doublings++ == 200) {
      throw DivergenceError("f_norm: no finite bracket after 200 doublings for " + x.to_string());
    }
    lo = hi;
    hi *= 2.0;
  }
  // lo = 0 is never evaluated: for t < rho(x), g(t) >= rho(x) - t > 0.
  for (int i = 0; i < 128 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

const char* to_string(Family f) {
  switch (f) {
    case Family::PPower:
      return "PPOWER";
    case Family::Orlicz:
      return "ORLICZ";
    case Family::WeightedSum:
      return "WEIGHTED_SUM";
    case Family::Planted:
      return "PLANTED";
  }
  return "?";
}

const char* to_string(Integrand phi) {
  switch (phi) {
    case Integrand::Power:
      return "POWER";
    case Integrand::ExpMinusOne:
      return "EXP_MINUS_ONE";
    case Integrand::ULog:
      return "U_LOG";
  }
  return "?";
}

const char* to_string(PlantedKind k) {
  switch (k) {
    case PlantedKind::SinBump:
      return "SIN_BUMP";
    case PlantedKind::Asymmetric:
      return "ASYMMETRIC";
    case PlantedKind::ZeroWeight:
      return "ZERO_WEIGHT";
  }
  return "?";
}

}  // namespace modspace
