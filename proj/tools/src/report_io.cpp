#include "modspace/cli/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "modspace/cli/config.hpp"
#include "modspace/tolerance.hpp"

namespace modspace::cli {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw UsageError("not a number: '" + s + "'");
  return x;
}

json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_double(j.get<std::string>());
  throw UsageError("expected a number in JSON, got " + j.dump());
}

json to_json(const Point& p) { return std::vector<double>(p.coords().begin(), p.coords().end()); }

json to_json(const AxiomReport& r) {
  json j;
  j["trials"] = r.trials;
  j["passed"] = r.passed();
  j["violation_count"] = r.violations.size();
  j["max_slack_violation"] = json_number(r.max_slack_violation);
  if (r.max_ratio) j["max_ratio"] = json_number(*r.max_ratio);
  json by_condition = json::object();
  json list = json::array();
  for (const Violation& v : r.violations) {
    by_condition[to_string(v.condition)] = by_condition.value(to_string(v.condition), 0) + 1;
    json w;
    w["condition"] = to_string(v.condition);
    w["points"] = json::array();
    for (const Point& p : v.witnesses) w["points"].push_back(to_json(p));
    w["scalars"] = v.scalars;
    w["lhs"] = json_number(v.lhs);
    w["rhs"] = json_number(v.rhs);
    list.push_back(std::move(w));
  }
  j["violations_by_condition"] = std::move(by_condition);
  j["violations"] = std::move(list);
  return j;
}

json to_json(const Delta2Estimate& e) {
  json j;
  j["constant"] = json_number(e.constant);
  j["unbounded"] = e.unbounded;
  j["running_max"] = json::array();
  for (double v : e.running_max) j["running_max"].push_back(json_number(v));
  return j;
}

json to_json(const FatouReport& f) {
  return {{"lhs", json_number(f.lhs)},
          {"tail_min", json_number(f.tail_min)},
          {"steps", f.steps},
          {"holds", f.holds}};
}

json to_json(const OrbitBound& b) {
  return {{"sup", json_number(b.sup)}, {"stabilized", b.stabilized}, {"argmax", b.argmax}};
}

json to_json(const SlackCheck& s) {
  json j{{"worst_slack", json_number(s.worst_slack)}, {"vacuous", s.vacuous}, {"passed", s.passed}};
  if (s.worst_at) j["worst_at"] = {s.worst_at->first, s.worst_at->second};
  return j;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return json::parse(in);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

void write_header(std::ostream& out, std::initializer_list<const char*> fixed, std::size_t dim) {
  bool first = true;
  for (const char* name : fixed) {
    out << (first ? "" : ",") << name;
    first = false;
  }
  for (std::size_t i = 0; i < dim; ++i) out << ",x" << i;
  out << '\n';
}

}  // namespace

void write_trace_csv(const fs::path& path, const IterationTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const std::size_t dim = trace.steps.empty() ? 0 : trace.steps.front().x.dim();
  write_header(out, {"n", "step_mod", "residual", "doubled_orbit"}, dim);
  for (const IterationStep& s : trace.steps) {
    out << s.n << ',' << format_double(s.step_mod) << ',' << format_double(s.residual) << ','
        << format_double(s.doubled_orbit);
    for (double x : s.x.coords()) out << ',' << format_double(x);
    out << '\n';
  }
}

std::vector<TraceRow> read_trace_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() < 5) throw UsageError("malformed trace row: " + line);
    TraceRow row{static_cast<std::size_t>(std::stoull(cells[0])), parse_double(cells[1]),
                 parse_double(cells[2]), parse_double(cells[3]), {}};
    for (std::size_t i = 4; i < cells.size(); ++i) row.x.push_back(parse_double(cells[i]));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_certificate(const fs::path& dir, const ChainCertificate& cert, const ModularSpec& m,
                       const json& extra) {
  const auto slacks = node_slacks(cert, m);
  {
    std::ofstream out(dir / "certificate.csv");
    if (!out) throw std::runtime_error("cannot write " + (dir / "certificate.csv").string());
    write_header(out, {"n", "alpha", "pair_slack", "max_slack"}, cert.omega.dim());
    for (std::size_t n = 0; n < cert.nodes.size(); ++n) {
      out << n << ',' << format_double(cert.nodes[n].alpha) << ','
          << format_double(slacks[n].pair) << ',' << format_double(slacks[n].max);
      for (double x : cert.nodes[n].x.coords()) out << ',' << format_double(x);
      out << '\n';
    }
  }

  json j = extra;
  j["space"] = space_to_json(m);
  j["omega"] = to_json(cert.omega);
  j["c"] = cert.c;
  j["alpha"] = cert.alpha;
  j["N"] = cert.length();
  j["tol"] = cert.tol;
  j["limit_candidate"] = to_json(cert.limit_candidate);
  j["pair_check"] = to_json(cert.pair_check);
  j["max_check"] = to_json(cert.max_check);
  j["all_pass"] = cert.all_pass;
  json table = json::array();
  for (const CauchyRow& row : cauchy_modulus(cert)) {
    json r{{"eps", row.eps}};
    r["index"] = row.index ? json(*row.index) : json(nullptr);
    table.push_back(std::move(r));
  }
  j["cauchy_modulus"] = std::move(table);
  write_json(dir / "certificate.json", j);
}

LoadedCertificate read_certificate(const fs::path& dir) {
  const json j = read_json(dir / "certificate.json");
  ModularSpec space = parse_space(j.at("space"));

  std::ifstream in(dir / "certificate.csv");
  if (!in) throw std::runtime_error("cannot read " + (dir / "certificate.csv").string());
  std::string line;
  std::getline(in, line);
  std::vector<ChainNode> nodes;
  std::vector<NodeSlack> recorded;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() < 5) throw UsageError("malformed certificate row: " + line);
    std::vector<double> x;
    for (std::size_t i = 4; i < cells.size(); ++i) x.push_back(parse_double(cells[i]));
    nodes.push_back({Point(std::move(x)), parse_double(cells[1])});
    recorded.push_back({parse_double(cells[2]), parse_double(cells[3])});
  }

  ChainCertificate cert{Point(j.at("omega").get<std::vector<double>>()),
                        j.at("c").get<double>(),
                        j.at("alpha").get<double>(),
                        std::move(nodes),
                        Point(j.at("limit_candidate").get<std::vector<double>>()),
                        j.at("tol").get<double>(),
                        {},
                        {},
                        false};
  return {std::move(space), std::move(cert), std::move(recorded), j.at("all_pass").get<bool>()};
}

CertificateRecheck recheck_certificate(const fs::path& dir) {
  LoadedCertificate loaded = read_certificate(dir);
  reverify(loaded.cert, loaded.space);
  const auto fresh = node_slacks(loaded.cert, loaded.space);

  CertificateRecheck out;
  out.nodes = fresh.size();
  out.recorded_all_pass = loaded.recorded_all_pass;
  out.recomputed_all_pass = loaded.cert.all_pass;
  if (fresh.size() != loaded.recorded.size()) {
    out.max_discrepancy = kInf;
    return out;
  }
  auto gap = [](double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return a == b ? 0.0 : kInf;
    return std::abs(a - b);
  };
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    out.max_discrepancy = std::max(out.max_discrepancy, gap(fresh[i].pair, loaded.recorded[i].pair));
    out.max_discrepancy = std::max(out.max_discrepancy, gap(fresh[i].max, loaded.recorded[i].max));
  }
  return out;
}

}  // namespace modspace::cli
