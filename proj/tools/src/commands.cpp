#include "modspace/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "modspace/chain.hpp"
#include "modspace/checks.hpp"
#include "modspace/cli/report_io.hpp"
#include "modspace/sampler.hpp"
#include "modspace/solver.hpp"
#include "modspace/tolerance.hpp"

namespace modspace::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Sampler streams, one per checker, so adding a checker never shifts the
// draws of another.
enum Stream : std::uint64_t {
  kAxiomStream = 1,
  kSConvexStream = 2,
  kDelta2Stream = 3,
  kFatouStream = 4,
  kContractionStream = 5,
  kSContractionStream = 6,
  kPowerDelta2Stream = 7,
};

json header(const ProblemConfig& cfg) {
  return {{"space", space_to_json(cfg.space)}, {"dim", cfg.dim}, {"seed", cfg.seed}};
}

void require_solver_inputs(const ProblemConfig& cfg, const char* command) {
  if (!cfg.map) throw ConfigError("map", std::string("required by ") + command);
  if (!cfg.initial_point) throw ConfigError("initial_point", std::string("required by ") + command);
}

struct ContractionFinding {
  json report;
  double empirical = 0.0;
  /// Constant used downstream: the claim if it survived sampling, else the
  /// empirical ratio.
  double used = 0.0;
};

ContractionFinding assess_contraction(const ProblemConfig& cfg) {
  ContractionFinding f;
  Sampler sampler(derive_seed(cfg.seed, kContractionStream));
  if (const auto& c = cfg.map->claimed_c()) {
    const AxiomReport rep = verify_contraction(*cfg.map, cfg.space, *c, cfg.dim, sampler, cfg.trials);
    f.empirical = rep.max_ratio.value_or(0.0);
    f.used = rep.passed() ? *c : f.empirical;
    f.report = to_json(rep);
    f.report["claimed_c"] = *c;
  } else {
    f.empirical = empirical_contraction_ratio(*cfg.map, cfg.space, cfg.dim, sampler, cfg.trials);
    f.used = f.empirical;
    f.report = {{"trials", cfg.trials}, {"claimed_c", nullptr}};
  }
  f.report["empirical_c"] = json_number(f.empirical);
  f.report["c_used"] = json_number(f.used);
  return f;
}

}  // namespace

int run_check(const ProblemConfig& cfg, std::ostream& log) {
  fs::create_directories(cfg.out_dir);
  bool ok = true;
  json summary = header(cfg);

  {
    Sampler sampler(derive_seed(cfg.seed, kAxiomStream));
    const AxiomReport rep = check_modular_axioms(cfg.space, cfg.dim, sampler, cfg.trials);
    json j = header(cfg);
    j["report"] = to_json(rep);
    write_json(cfg.out_dir / "axioms.json", j);
    summary["axioms"] = rep.passed();
    ok = ok && rep.passed();
    log << "axioms: " << rep.violations.size() << " violation(s) in " << rep.trials << " trials\n";
  }

  if (cfg.s) {
    Sampler sampler(derive_seed(cfg.seed, kSConvexStream));
    const AxiomReport rep = check_s_convexity(cfg.space, *cfg.s, cfg.dim, sampler, cfg.trials);
    json j = header(cfg);
    j["s"] = *cfg.s;
    j["report"] = to_json(rep);
    write_json(cfg.out_dir / "s_convexity.json", j);
    summary["s_convexity"] = rep.passed();
    ok = ok && rep.passed();
    log << "s-convexity (s=" << *cfg.s << "): " << rep.violations.size() << " violation(s)\n";
  }

  {
    json j = header(cfg);
    try {
      Sampler sampler(derive_seed(cfg.seed, kDelta2Stream));
      const Delta2Estimate est = delta2_type_estimate(cfg.space, cfg.dim, sampler, cfg.trials);
      j["report"] = to_json(est);
      if (auto exact = cfg.space.exact_delta2()) j["exact"] = *exact;
      summary["delta2"] = json_number(est.constant);
      log << "delta2-type constant: " << format_double(est.constant)
          << (est.unbounded ? " (unbounded)" : "") << '\n';
    } catch (const InvalidModularError& e) {
      j["error"] = e.what();
      summary["delta2"] = "invalid";
      ok = false;
      log << "delta2-type estimate failed: " << e.what() << '\n';
    }
    write_json(cfg.out_dir / "delta2.json", j);
  }

  {
    Sampler sampler(derive_seed(cfg.seed, kFatouStream));
    const Point x = cfg.initial_point ? *cfg.initial_point : sampler.point(cfg.dim);
    const Point y = sampler.point(cfg.dim);
    const FatouReport rep =
        check_fatou_sampled(cfg.space, x, y, cfg.fatou_ratio, cfg.fatou_steps, sampler);
    json j = header(cfg);
    j["x"] = to_json(x);
    j["y"] = to_json(y);
    j["ratio"] = cfg.fatou_ratio;
    j["report"] = to_json(rep);
    write_json(cfg.out_dir / "fatou.json", j);
    summary["fatou"] = rep.holds;
    ok = ok && rep.holds;
    log << "fatou: " << (rep.holds ? "holds" : "VIOLATED") << '\n';
  }

  summary["passed"] = ok;
  write_json(cfg.out_dir / "check.json", summary);
  return ok ? kExitSuccess : kExitFailure;
}

int run_solve(const ProblemConfig& cfg, std::ostream& log) {
  require_solver_inputs(cfg, "solve");
  fs::create_directories(cfg.out_dir);
  const MapSpec& map = *cfg.map;
  json summary = header(cfg);
  summary["map"] = map.describe();
  summary["tol"] = cfg.tol;
  summary["max_iter"] = cfg.max_iter;

  const ContractionFinding contraction = assess_contraction(cfg);
  summary["contraction"] = contraction.report;

  if (const auto& sc = map.claimed_s_contraction()) {
    Sampler sampler(derive_seed(cfg.seed, kSContractionStream));
    summary["s_contraction"] =
        to_json(verify_s_contraction(map, cfg.space, sc->c, sc->k, sc->s, cfg.dim, sampler, cfg.trials));
  }

  const PowerSolveOptions power_opts{derive_seed(cfg.seed, kPowerDelta2Stream), cfg.trials};
  double k = kInf;
  try {
    k = delta2_constant_for(cfg.space, cfg.dim, power_opts);
  } catch (const NotApplicableError&) {
  } catch (const InvalidModularError&) {
  }
  summary["delta2_constant"] = json_number(k);

  const double c = contraction.used;
  const bool power_path = c < 1.0 && std::isfinite(k) && c * k >= 0.5;
  summary["path"] = power_path ? "power" : "direct";

  IterationTrace trace;
  bool converged = false;
  try {
    trace = power_path ? solve_via_power(map, cfg.space, c, *cfg.initial_point, cfg.tol,
                                         cfg.max_iter, power_opts)
                       : picard_solve(map, cfg.space, *cfg.initial_point, cfg.tol, cfg.max_iter);
    converged = trace.converged;
  } catch (const PicardDivergence& e) {
    trace = e.trace();
    summary["error"] = e.what();
  } catch (const InconsistencyError& e) {
    summary["error"] = e.what();
  }

  write_trace_csv(cfg.out_dir / "trace.csv", trace);
  summary["converged"] = converged;
  summary["iterations"] = trace.iterations();
  summary["map_power"] = trace.map_power;
  if (trace.fixed_point) summary["fixed_point"] = to_json(*trace.fixed_point);
  if (!trace.steps.empty()) summary["final_residual"] = json_number(trace.steps.back().residual);
  write_json(cfg.out_dir / "solve.json", summary);

  log << "solve: " << (converged ? "converged" : "did not converge") << " after "
      << trace.iterations() << " iteration(s) on T^" << trace.map_power << " (c="
      << format_double(c) << ", k=" << format_double(k) << ")\n";
  if (trace.fixed_point) log << "fixed point: " << trace.fixed_point->to_string() << '\n';
  return converged ? kExitSuccess : kExitFailure;
}

int run_certificate(const ProblemConfig& cfg, std::ostream& log) {
  require_solver_inputs(cfg, "certificate");
  fs::create_directories(cfg.out_dir);
  const MapSpec& map = *cfg.map;
  const Point& omega = *cfg.initial_point;
  json extra = header(cfg);
  extra["map"] = map.describe();

  auto fail = [&](const std::string& why) {
    extra["error"] = why;
    extra["all_pass"] = false;
    write_json(cfg.out_dir / "certificate.json", extra);
    log << "certificate: " << why << '\n';
    return kExitFailure;
  };

  const OrbitBound orbit = orbit_bound_check(map, cfg.space, omega, std::max<std::size_t>(cfg.chain_n, 2));
  extra["orbit_bound"] = to_json(orbit);
  if (orbit.sup == kInf) return fail("orbit of omega is unbounded");

  const ContractionFinding contraction = assess_contraction(cfg);
  extra["contraction"] = contraction.report;
  const double c = contraction.used;
  if (!(c < 1.0)) return fail("no contraction constant below 1 (empirical " + format_double(c) + ")");

  try {
    double alpha = 0.0;
    if (cfg.chain_alpha) {
      alpha = *cfg.chain_alpha;
    } else if (cfg.chain_n >= 1) {
      alpha = compute_alpha(cfg.space, map, omega, c, cfg.chain_n);
    }
    alpha *= cfg.chain_alpha_scale;
    extra["alpha_scale"] = cfg.chain_alpha_scale;

    const ChainCertificate cert = build_chain(cfg.space, map, omega, c, alpha, cfg.chain_n, cfg.tol);
    write_certificate(cfg.out_dir, cert, cfg.space, extra);
    log << "certificate: N=" << cert.length() << " alpha=" << format_double(cert.alpha)
        << " pair slack=" << format_double(cert.pair_check.worst_slack)
        << " max slack=" << format_double(cert.max_check.worst_slack) << " -> "
        << (cert.all_pass ? "PASS" : "FAIL") << '\n';
    return cert.all_pass ? kExitSuccess : kExitFailure;
  } catch (const UnboundedOrbitError& e) {
    return fail(e.what());
  }
}

int run_command(std::string_view command, const RunOptions& opts, std::ostream& out,
                std::ostream& err) {
  std::ostream silent(nullptr);
  std::ostream& log = opts.quiet ? silent : out;
  try {
    ProblemConfig cfg = load_config(opts.config);
    if (opts.seed) cfg.seed = *opts.seed;
    if (opts.out) cfg.out_dir = *opts.out;

    if (command == "check") return run_check(cfg, log);
    if (command == "solve") return run_solve(cfg, log);
    if (command == "certificate") return run_certificate(cfg, log);
    err << "unknown command '" << command << "'\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace modspace::cli
