#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "modspace/map.hpp"
#include "modspace/modular.hpp"
#include "modspace/point.hpp"

namespace modspace {

/// Relative headroom added to the minimal admissible alpha.
inline constexpr double kAlphaMargin = 1e-6;

/// alpha = (1 + margin) * max_{1<=n<=N} rho(omega - T^n omega) / (1 - c^n), so
/// that rho(omega - T^n omega) <= alpha - c^n alpha holds strictly for every
/// n <= N. Throws UnboundedOrbitError if the orbit overflows.
double compute_alpha(const ModularSpec& m, const MapSpec& map, const Point& omega, double c,
                     std::size_t n_steps);

struct ChainNode {
  Point x;       // T^n omega
  double alpha;  // c^n alpha
};

/// Result of checking a family of inequalities "slack >= 0".
struct SlackCheck {
  double worst_slack = std::numeric_limits<double>::infinity();
  /// No inequality was checked (e.g. a singleton chain has no pairs).
  bool vacuous = true;
  /// Every slack cleared -tolerance.
  bool passed = true;
  /// (p, q) for pair checks, (n, n) for the maximum-element check.
  std::optional<std::pair<std::size_t, std::size_t>> worst_at;
};

/// Finite witness of the ordered set {(T^n omega, c^n alpha)} with the
/// order (x, a) <= (y, b) iff rho(x - y) <= a - b.
struct ChainCertificate {
  Point omega;
  double c = 0.0;
  double alpha = 0.0;
  std::vector<ChainNode> nodes;
  /// Stand-in for the maximum element, paired with alpha_0 = 0.
  Point limit_candidate;
  /// Tolerance used for the maximum-element check.
  double tol = 0.0;
  SlackCheck pair_check;
  SlackCheck max_check;
  bool all_pass = false;

  std::size_t length() const { return nodes.empty() ? 0 : nodes.size() - 1; }
};

/// Nodes (T^n omega, c^n alpha) for n = 0..N, limit_candidate = T^N omega,
/// then runs both verifications.
ChainCertificate build_chain(const ModularSpec& m, const MapSpec& map, const Point& omega, double c,
                             double alpha, std::size_t n_steps, double tol = 0.0);

/// Minimum over p < q of (alpha_p - alpha_q) - rho(x_p - x_q).
SlackCheck verify_order_pairs(const ChainCertificate& cert, const ModularSpec& m);

/// Minimum over n of alpha_n - rho(x_n - limit_candidate); passes when every
/// slack is >= -tol.
SlackCheck verify_maximum_element(const ChainCertificate& cert, const ModularSpec& m, double tol);

/// Re-runs both checks and refreshes all_pass.
void reverify(ChainCertificate& cert, const ModularSpec& m);

/// Per-node slacks: min over q > n of the pair slack (+inf for the last node)
/// and alpha_n - rho(x_n - limit_candidate).
struct NodeSlack {
  double pair = 0.0;
  double max = 0.0;
};
std::vector<NodeSlack> node_slacks(const ChainCertificate& cert, const ModularSpec& m);

struct CauchyRow {
  double eps;
  /// Least N with alpha_N < eps; absent when the chain is too short.
  std::optional<std::size_t> index;
};

/// Cauchy modulus over the decade grid 1e-1 .. 1e-8.
std::vector<CauchyRow> cauchy_modulus(const ChainCertificate& cert);
std::vector<CauchyRow> cauchy_modulus(const ChainCertificate& cert, const std::vector<double>& eps);

}  // namespace modspace
