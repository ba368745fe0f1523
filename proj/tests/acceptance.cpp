// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "modspace/cli/commands.hpp"
#include "modspace/cli/config.hpp"
#include "modspace/cli/report_io.hpp"
#include "modspace/modspace.hpp"
#include "support/oracles.hpp"

using namespace modspace;
namespace fs = std::filesystem;

namespace {

constexpr double kTol = 1e-10;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(double x) { return cli::format_double(x); }

fs::path config_path(const std::string& name) { return fs::path(MODSPACE_CONFIG_DIR) / name; }

// Shipped configs that carry a contraction claim.
const std::vector<std::string> kContractionConfigs{"half_p1.json",    "half_p2.json",
                                                   "affine_p1.json",  "affine_p2.json",
                                                   "logistic_ulog.json", "weighted_affine.json"};

struct RandomAffine {
  oracle::Matrix a;
  std::vector<double> b;
  double norm;
};

std::vector<RandomAffine> random_affines() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> norm(0.3, 0.9), offset(-2.0, 2.0);
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  std::vector<RandomAffine> out;
  for (int i = 0; i < 10; ++i) {
    const std::size_t d = dim(rng);
    RandomAffine r;
    r.norm = norm(rng);
    r.a = oracle::random_l1_contraction(rng, d, r.norm);
    r.b.resize(d);
    for (double& v : r.b) v = offset(rng);
    out.push_back(std::move(r));
  }
  return out;
}

Outcome axiom_suite() {
  Outcome o;
  const std::vector<ModularSpec> valid{ModularSpec::ppower(0.5),
                                       ModularSpec::ppower(1.0),
                                       ModularSpec::ppower(2.0),
                                       ModularSpec::weighted_sum(1.5, {1.0, 0.5, 3.0}),
                                       ModularSpec::orlicz(Integrand::Power, 3, 2.0),
                                       ModularSpec::orlicz(Integrand::ExpMinusOne, 3),
                                       ModularSpec::orlicz(Integrand::ULog, 3)};
  for (std::size_t i = 0; i < valid.size(); ++i) {
    Sampler sampler(derive_seed(1, i));
    const AxiomReport r = check_modular_axioms(valid[i], 3, sampler, 10000);
    o.require(r.passed(), valid[i].describe() + ": " + std::to_string(r.violations.size()) +
                              " violation(s)");
  }
  const std::pair<PlantedKind, Condition> planted[] = {
      {PlantedKind::SinBump, Condition::Convexity},
      {PlantedKind::Asymmetric, Condition::Symmetry},
      {PlantedKind::ZeroWeight, Condition::Zero}};
  for (const auto& [kind, target] : planted) {
    Sampler sampler(derive_seed(2, static_cast<std::uint64_t>(kind)));
    const AxiomReport r = check_modular_axioms(ModularSpec::planted(kind), 3, sampler, 10000);
    o.require(r.count(target) >= 1, std::string(to_string(kind)) + " not caught on " +
                                        to_string(target));
  }
  return o;
}

Outcome f_norm_oracle() {
  Outcome o;
  double worst = 0.0;
  for (double p : {0.5, 1.0, 2.0}) {
    const ModularSpec m = ModularSpec::ppower(p);
    for (int i = 0; i < 100; ++i) {
      const double x = std::pow(10.0, -4.0 + 8.0 * i / 99.0);
      worst = std::max(worst, std::abs(f_norm(m, Point{x}, 1e-12) - std::pow(x, p / (p + 1.0))));
    }
  }
  o.require(worst <= 1e-8, "max error " + fmt(worst));
  if (o.ok) o.detail = "max error " + fmt(worst);
  return o;
}

Outcome delta2_exactness() {
  Outcome o;
  for (double p : {0.5, 1.0, 2.0}) {
    Sampler sampler(derive_seed(3, static_cast<std::uint64_t>(p * 2)));
    const Delta2Estimate e = delta2_type_estimate(ModularSpec::ppower(p), 3, sampler, 6000);
    o.require(std::abs(e.constant - std::exp2(p)) <= 1e-6 && !e.unbounded,
              "p=" + fmt(p) + " gave " + fmt(e.constant));
  }
  Sampler sampler(derive_seed(3, 99));
  const Delta2Estimate e =
      delta2_type_estimate(ModularSpec::orlicz(Integrand::ExpMinusOne, 3), 3, sampler, 6000);
  o.require(e.unbounded, "EXP_MINUS_ONE not flagged unbounded");
  return o;
}

// Criteria 4 and 5 share the same runs.
struct AffineRun {
  IterationTrace trace;
  double c_emp = 0.0;
  bool c_verified = false;
  double oracle_distance = 0.0;
};

std::vector<AffineRun> affine_runs() {
  std::vector<AffineRun> runs;
  std::uint64_t stream = 0;
  const ModularSpec m = ModularSpec::ppower(1.0);
  for (const RandomAffine& r : random_affines()) {
    const std::size_t d = r.b.size();
    const MapSpec map = MapSpec::affine(r.a, Point(r.b));
    AffineRun run;
    Sampler s1(derive_seed(5, stream)), s2(derive_seed(5, stream));
    run.c_emp = empirical_contraction_ratio(map, m, d, s1, 4000);
    run.c_verified = verify_contraction(map, m, run.c_emp, d, s2, 4000).passed();
    run.trace = picard_solve(map, m, Point::zeros(d), kTol, 10000);
    if (run.trace.converged) {
      run.oracle_distance =
          distance(m, *run.trace.fixed_point, Point(oracle::affine_fixed_point(r.a, r.b)));
    }
    runs.push_back(std::move(run));
    ++stream;
  }
  return runs;
}

Outcome affine_end_to_end(const std::vector<AffineRun>& runs) {
  Outcome o;
  double worst = 0.0;
  for (const RandomAffine& r : random_affines()) {
    o.require(oracle::spectral_radius(r.a) <= 0.9 + 1e-12, "spectral radius above 0.9");
  }
  for (std::size_t i = 0; i < runs.size(); ++i) {
    o.require(runs[i].trace.converged, "run " + std::to_string(i) + " did not converge");
    o.require(runs[i].oracle_distance <= 10.0 * kTol,
              "run " + std::to_string(i) + " off by " + fmt(runs[i].oracle_distance));
    worst = std::max(worst, runs[i].oracle_distance);
  }
  if (o.ok) o.detail = "max distance to direct solve " + fmt(worst);
  return o;
}

Outcome geometric_decay(const std::vector<AffineRun>& runs) {
  Outcome o;
  double worst_rel = -1.0, worst_abs = -INFINITY;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const AffineRun& run = runs[i];
    o.require(run.c_verified, "run " + std::to_string(i) + ": c_emp failed verification");
    if (!run.trace.converged) continue;
    const auto& steps = run.trace.steps;
    for (std::size_t n = 1; n + 1 < steps.size(); ++n) {
      const double bound = run.c_emp * steps[n].step_mod;
      worst_rel = std::max(worst_rel, steps[n + 1].step_mod / bound - 1.0);
      worst_abs = std::max(worst_abs, steps[n + 1].step_mod - bound);
      // epsilon_num: 1e-9 relative plus 1e-12 absolute, as for every inequality check.
      o.require(leq_tol(steps[n + 1].step_mod, bound),
                "run " + std::to_string(i) + " step " + std::to_string(n + 1) + ": " +
                    fmt(steps[n + 1].step_mod) + " > " + fmt(run.c_emp) + " * " +
                    fmt(steps[n].step_mod));
    }
  }
  if (o.ok) {
    o.detail = "worst excess over c_emp * step: " + fmt(worst_abs) + " absolute, " +
               fmt(worst_rel) + " relative";
  }
  return o;
}

Outcome power_path() {
  Outcome o;
  o.require(power_index(0.9, 4.0) == 20 && oracle::power_index_by_enumeration(0.9, 4.0) == 20,
            "power_index(0.9, 4) != 20");
  double worst = 0.0;
  for (const std::string& name : kContractionConfigs) {
    const cli::ProblemConfig cfg = cli::load_config(config_path(name));
    const double c = *cfg.map->claimed_c();
    const PowerSolveOptions opts{derive_seed(cfg.seed, 7), 6000};
    const IterationTrace power =
        solve_via_power(*cfg.map, cfg.space, c, *cfg.initial_point, kTol, cfg.max_iter, opts);
    const IterationTrace direct =
        picard_solve(*cfg.map, cfg.space, *cfg.initial_point, kTol, cfg.max_iter);
    o.require(power.converged && direct.converged, name + ": did not converge");
    if (!(power.converged && direct.converged)) continue;
    const double d = distance(cfg.space, *power.fixed_point, *direct.fixed_point);
    o.require(d <= 10.0 * kTol, name + ": paths differ by " + fmt(d));
    worst = std::max(worst, d);
  }
  if (o.ok) o.detail = "max distance between paths " + fmt(worst);
  return o;
}

Outcome chain_certificate() {
  Outcome o;
  const ModularSpec m = ModularSpec::ppower(1.0);
  const std::pair<MapSpec, Point> setups[] = {{MapSpec::half(), Point{1.0}},
                                              {MapSpec::affine({{0.5}}, Point{1.0}), Point{0.0}}};
  for (const auto& [map, omega] : setups) {
    const double alpha = compute_alpha(m, map, omega, 0.5, 30);
    o.require(build_chain(m, map, omega, 0.5, alpha, 30, kTol).all_pass,
              map.describe() + ": certificate failed");
    o.require(!build_chain(m, map, omega, 0.5, alpha / 2.0, 30, kTol).all_pass,
              map.describe() + ": halved alpha still passes");
  }
  const ChainCertificate unit = build_chain(m, MapSpec::half(), Point{1.0}, 0.5, 1.0, 30);
  const auto row = cauchy_modulus(unit, {1e-3}).front();
  o.require(row.index && *row.index == 10, "N_eps at 1e-3 is not 10");
  return o;
}

Outcome uniqueness() {
  Outcome o;
  double worst = 0.0;
  for (const std::string& name : kContractionConfigs) {
    const cli::ProblemConfig cfg = cli::load_config(config_path(name));
    Sampler sampler(derive_seed(cfg.seed, 8));
    for (int t = 0; t < 5; ++t) {
      const Point x0 = *cfg.initial_point;
      const double shift = (sampler.coin() ? 1.0 : -1.0) * std::pow(10.0, sampler.uniform(0.5, 1.5));
      const Point y0 = x0 + Point::filled(cfg.dim, shift);
      o.require(distance(cfg.space, x0, y0) >= 1.0, name + ": starts closer than 1");
      const auto a = picard_solve(*cfg.map, cfg.space, x0, kTol, cfg.max_iter);
      const auto b = picard_solve(*cfg.map, cfg.space, y0, kTol, cfg.max_iter);
      o.require(a.converged && b.converged, name + ": did not converge");
      if (!(a.converged && b.converged)) continue;
      const double d = distance(cfg.space, *a.fixed_point, *b.fixed_point);
      o.require(d <= 10.0 * kTol, name + ": fixed points differ by " + fmt(d));
      worst = std::max(worst, d);
    }
  }
  if (o.ok) o.detail = "max distance " + fmt(worst);
  return o;
}

Outcome cli_round_trip() {
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "modspace_acceptance";
  fs::remove_all(root);
  std::ostringstream sink;
  double worst = 0.0;
  for (const std::string& name : kContractionConfigs) {
    const fs::path cfg = config_path(name);
    const fs::path a = root / name / "a", b = root / name / "b";
    const int ca = cli::run_command("solve", {cfg, 42, a, true}, sink, sink);
    const int cb = cli::run_command("solve", {cfg, 42, b, true}, sink, sink);
    const auto ja = cli::read_json(a / "solve.json"), jb = cli::read_json(b / "solve.json");
    o.require(ca == cb && ja.at("iterations") == jb.at("iterations") &&
                  ja.at("converged") == jb.at("converged"),
              name + ": repeated solve differs");

    const fs::path c = root / name / "cert";
    o.require(cli::run_command("certificate", {cfg, 42, c, true}, sink, sink) == cli::kExitSuccess,
              name + ": certificate failed");
    const cli::CertificateRecheck r = cli::recheck_certificate(c);
    o.require(r.recorded_all_pass == r.recomputed_all_pass, name + ": verdict changed on reload");
    o.require(r.max_discrepancy <= kAbsTol, name + ": slack drift " + fmt(r.max_discrepancy));
    worst = std::max(worst, r.max_discrepancy);
  }
  fs::remove_all(root);
  if (o.ok) o.detail = "max slack drift " + fmt(worst);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no runtime bound
    std::function<Outcome()> run;
  };

  std::vector<AffineRun> runs;
  const std::vector<Criterion> criteria{
      {1, "axiom suite", 10.0, axiom_suite},
      {2, "F-norm oracle", 1.0, f_norm_oracle},
      {3, "Delta2-type exactness", 5.0, delta2_exactness},
      {4, "affine contractions end to end", 5.0,
       [&] {
         runs = affine_runs();
         return affine_end_to_end(runs);
       }},
      {5, "geometric decay", 0.0, [&] { return geometric_decay(runs); }},
      {6, "power path", 0.0, power_path},
      {7, "chain certificate", 1.0, chain_certificate},
      {8, "uniqueness probe", 1.0, uniqueness},
      {9, "CLI determinism and round trip", 0.0, cli_round_trip},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0.0 && secs > c.limit_s) {
      o.ok = false;
      o.detail = "took " + fmt(secs) + " s, limit " + fmt(c.limit_s) + " s";
    }
    failures += o.ok ? 0 : 1;
    std::printf("%s criterion %d: %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
