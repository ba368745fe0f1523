#include "modspace/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "modspace/errors.hpp"
#include "modspace/tolerance.hpp"

namespace modspace {

namespace {

std::vector<double> step_orbit(const MapSpec& map, std::span<const double> x, std::size_t n) {
  auto next = map.apply(x);
  if (!all_finite(next)) {
    throw UnboundedOrbitError("orbit of " + map.describe() + " overflowed at n = " +
                              std::to_string(n));
  }
  return next;
}

void note(SlackCheck& check, double slack, double allowed, std::size_t p, std::size_t q) {
  check.vacuous = false;
  if (slack < check.worst_slack || !check.worst_at) {
    check.worst_slack = slack;
    check.worst_at = {p, q};
  }
  if (slack < -allowed) check.passed = false;
}

}  // namespace

double compute_alpha(const ModularSpec& m, const MapSpec& map, const Point& omega, double c,
                     std::size_t n_steps) {
  if (!(c >= 0.0 && c < 1.0)) throw UsageError("compute_alpha: c must lie in [0, 1)");
  if (n_steps < 1) throw UsageError("compute_alpha: N must be >= 1");
  m.check_dim(omega.dim());
  map.check_dim(omega.dim());

  std::vector<double> x(omega.coords().begin(), omega.coords().end());
  double cn = 1.0;
  double best = 0.0;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    x = step_orbit(map, x, n);
    const double r = distance(m, omega.coords(), x);
    if (r == kInf) {
      throw UnboundedOrbitError("rho(omega - T^n omega) is infinite at n = " + std::to_string(n));
    }
    cn *= c;
    best = std::max(best, r / (1.0 - cn));
  }
  return (1.0 + kAlphaMargin) * best;
}

ChainCertificate build_chain(const ModularSpec& m, const MapSpec& map, const Point& omega, double c,
                             double alpha, std::size_t n_steps, double tol) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw UsageError("build_chain: alpha must be >= 0");
  if (!(c >= 0.0 && c < 1.0)) throw UsageError("build_chain: c must lie in [0, 1)");
  if (tol < 0.0) throw UsageError("build_chain: tol must be >= 0");
  m.check_dim(omega.dim());
  map.check_dim(omega.dim());

  std::vector<ChainNode> nodes;
  nodes.reserve(n_steps + 1);
  nodes.push_back({omega, alpha});
  std::vector<double> x(omega.coords().begin(), omega.coords().end());
  double a = alpha;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    x = step_orbit(map, x, n);
    a *= c;
    nodes.push_back({Point(x), a});
  }

  Point limit = nodes.back().x;
  ChainCertificate cert{omega, c, alpha, std::move(nodes), std::move(limit), tol, {}, {}, false};
  reverify(cert, m);
  return cert;
}

SlackCheck verify_order_pairs(const ChainCertificate& cert, const ModularSpec& m) {
  if (cert.nodes.empty()) throw UsageError("verify_order_pairs: empty chain");
  SlackCheck check;
  for (std::size_t p = 0; p < cert.nodes.size(); ++p) {
    for (std::size_t q = p + 1; q < cert.nodes.size(); ++q) {
      const double gap = cert.nodes[p].alpha - cert.nodes[q].alpha;
      const double r = distance(m, cert.nodes[p].x, cert.nodes[q].x);
      note(check, gap - r, tolerance_for(std::max(std::abs(gap), r)), p, q);
    }
  }
  return check;
}

SlackCheck verify_maximum_element(const ChainCertificate& cert, const ModularSpec& m, double tol) {
  SlackCheck check;
  for (std::size_t n = 0; n < cert.nodes.size(); ++n) {
    const double a = cert.nodes[n].alpha;
    const double r = distance(m, cert.nodes[n].x, cert.limit_candidate);
    note(check, a - r, tol + tolerance_for(std::max(a, r)), n, n);
  }
  return check;
}

void reverify(ChainCertificate& cert, const ModularSpec& m) {
  cert.pair_check = verify_order_pairs(cert, m);
  cert.max_check = verify_maximum_element(cert, m, cert.tol);
  cert.all_pass = cert.pair_check.passed && cert.max_check.passed;
}

std::vector<NodeSlack> node_slacks(const ChainCertificate& cert, const ModularSpec& m) {
  std::vector<NodeSlack> out(cert.nodes.size(), NodeSlack{kInf, 0.0});
  for (std::size_t p = 0; p < cert.nodes.size(); ++p) {
    for (std::size_t q = p + 1; q < cert.nodes.size(); ++q) {
      const double r = distance(m, cert.nodes[p].x, cert.nodes[q].x);
      out[p].pair = std::min(out[p].pair, (cert.nodes[p].alpha - cert.nodes[q].alpha) - r);
    }
    out[p].max = cert.nodes[p].alpha - distance(m, cert.nodes[p].x, cert.limit_candidate);
  }
  return out;
}

std::vector<CauchyRow> cauchy_modulus(const ChainCertificate& cert,
                                      const std::vector<double>& eps) {
  std::vector<CauchyRow> rows;
  rows.reserve(eps.size());
  for (double e : eps) {
    CauchyRow row{e, std::nullopt};
    for (std::size_t n = 0; n < cert.nodes.size(); ++n) {
      if (cert.nodes[n].alpha < e) {
        row.index = n;
        break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<CauchyRow> cauchy_modulus(const ChainCertificate& cert) {
  return cauchy_modulus(cert, {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8});
}

}  // namespace modspace
