#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "modspace/chain.hpp"
#include "modspace/checks.hpp"
#include "modspace/modular.hpp"
#include "modspace/solver.hpp"

namespace modspace::cli {

/// 17 significant digits; non-finite values as inf, -inf, nan.
std::string format_double(double x);
double parse_double(std::string_view text);

/// JSON cannot hold non-finite numbers, so those become strings.
nlohmann::json json_number(double x);
double number_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Point& p);
nlohmann::json to_json(const AxiomReport& r);
nlohmann::json to_json(const Delta2Estimate& e);
nlohmann::json to_json(const FatouReport& f);
nlohmann::json to_json(const OrbitBound& b);
nlohmann::json to_json(const SlackCheck& s);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// trace.csv columns: n, step_mod, residual, doubled_orbit, x0..x{d-1}.
void write_trace_csv(const std::filesystem::path& path, const IterationTrace& trace);

struct TraceRow {
  std::size_t n;
  double step_mod;
  double residual;
  double doubled_orbit;
  std::vector<double> x;
};
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

/// Writes certificate.csv (n, alpha, pair_slack, max_slack, x0..x{d-1}) and
/// certificate.json (space, c, alpha, tol, limit candidate, verdicts, Cauchy
/// table, plus anything in `extra`) into `dir`.
void write_certificate(const std::filesystem::path& dir, const ChainCertificate& cert,
                       const ModularSpec& m, const nlohmann::json& extra = nlohmann::json::object());

struct LoadedCertificate {
  ModularSpec space;
  ChainCertificate cert;
  std::vector<NodeSlack> recorded;
  bool recorded_all_pass;
};
LoadedCertificate read_certificate(const std::filesystem::path& dir);

struct CertificateRecheck {
  /// Largest |recorded - recomputed| over all finite per-node slacks.
  double max_discrepancy = 0.0;
  bool recorded_all_pass = false;
  bool recomputed_all_pass = false;
  std::size_t nodes = 0;
};

/// Reloads a written certificate and recomputes every recorded slack.
CertificateRecheck recheck_certificate(const std::filesystem::path& dir);

}  // namespace modspace::cli
