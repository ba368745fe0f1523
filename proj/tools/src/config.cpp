#include "modspace/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace modspace::cli {

using nlohmann::json;

namespace {

/// A JSON object plus the dotted path that led to it. Tracks which keys were
/// read so that leftovers can be reported as unknown.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "must be an object");
  }

  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json& at(const std::string& key) {
    if (!obj_.contains(key)) throw ConfigError(key_path(key), "missing required key");
    used_.insert(key);
    return obj_.at(key);
  }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError(key_path(key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(key_path(key), "must be finite");
    return x;
  }

  std::optional<double> opt_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  std::uint64_t unsigned_int(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw ConfigError(key_path(key), "expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string name(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError(key_path(key), "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) {
    const json& v = at(key);
    if (!v.is_array() || v.empty()) throw ConfigError(key_path(key), "expected a nonempty array");
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) throw ConfigError(key_path(key), "array entries must be numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<std::vector<double>> rows(const std::string& key) {
    const json& v = at(key);
    if (!v.is_array() || v.empty()) throw ConfigError(key_path(key), "expected an array of rows");
    std::vector<std::vector<double>> out;
    for (const json& row : v) {
      if (!row.is_array()) throw ConfigError(key_path(key), "rows must be arrays");
      auto& r = out.emplace_back();
      for (const json& e : row) {
        if (!e.is_number()) throw ConfigError(key_path(key), "matrix entries must be numbers");
        r.push_back(e.get<double>());
      }
    }
    return out;
  }

  Section child(const std::string& key) { return Section(at(key), key_path(key)); }

  void reject_unknown() const {
    for (const auto& [key, _] : obj_.items()) {
      if (!used_.count(key)) throw ConfigError(key_path(key), "unknown key");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> used_;
};

template <typename Enum>
Enum parse_enum(Section& s, const std::string& key,
                std::initializer_list<std::pair<const char*, Enum>> options) {
  const std::string value = s.name(key);
  for (const auto& [label, e] : options) {
    if (value == label) return e;
  }
  std::string allowed;
  for (const auto& [label, _] : options) allowed += (allowed.empty() ? "" : ", ") + std::string(label);
  throw ConfigError(s.key_path(key), "unknown value '" + value + "' (expected one of " + allowed + ")");
}

template <typename F>
auto wrap(const std::string& key, F&& build) {
  try {
    return build();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(key, e.what());
  }
}

ModularSpec parse_space_section(Section& s) {
  const Family family = parse_enum<Family>(s, "family",
                                           {{"PPOWER", Family::PPower},
                                            {"ORLICZ", Family::Orlicz},
                                            {"WEIGHTED_SUM", Family::WeightedSum},
                                            {"PLANTED", Family::Planted}});
  return wrap(s.key_path("family"), [&] {
    switch (family) {
      case Family::PPower:
        return ModularSpec::ppower(s.number("p"));
      case Family::WeightedSum: {
        const double p = s.number("p");
        return ModularSpec::weighted_sum(p, s.numbers("weights"));
      }
      case Family::Orlicz: {
        const Integrand phi = parse_enum<Integrand>(s, "phi",
                                                    {{"POWER", Integrand::Power},
                                                     {"EXP_MINUS_ONE", Integrand::ExpMinusOne},
                                                     {"U_LOG", Integrand::ULog}});
        const std::uint64_t nodes = s.unsigned_int("quadrature_nodes");
        const double p = phi == Integrand::Power ? s.number("p") : 1.0;
        return ModularSpec::orlicz(phi, nodes, p);
      }
      case Family::Planted:
        break;
    }
    return ModularSpec::planted(parse_enum<PlantedKind>(
        s, "planted",
        {{"SIN_BUMP", PlantedKind::SinBump},
         {"ASYMMETRIC", PlantedKind::Asymmetric},
         {"ZERO_WEIGHT", PlantedKind::ZeroWeight}}));
  });
}

MapSpec parse_map_section(Section& s) {
  const MapKind kind =
      parse_enum<MapKind>(s, "kind", {{"AFFINE", MapKind::Affine}, {"SCALARWISE", MapKind::Scalarwise}});
  MapSpec map = wrap(s.key_path("kind"), [&] {
    if (kind == MapKind::Affine) {
      auto matrix = s.rows("matrix");
      auto offset = wrap(s.key_path("offset"), [&] { return Point(s.numbers("offset")); });
      return wrap(s.key_path("matrix"), [&] { return MapSpec::affine(std::move(matrix), offset); });
    }
    const ScalarMap f = parse_enum<ScalarMap>(s, "function",
                                              {{"HALF", ScalarMap::Half},
                                               {"LOGISTIC_DAMPED", ScalarMap::LogisticDamped},
                                               {"CONST", ScalarMap::Const}});
    switch (f) {
      case ScalarMap::Half:
        return MapSpec::half();
      case ScalarMap::LogisticDamped:
        return MapSpec::logistic_damped(s.number("lambda"));
      case ScalarMap::Const:
        break;
    }
    return MapSpec::constant(s.number("value"));
  });

  if (s.has("k") || s.has("s")) {
    const SContraction k{s.number("c"), s.number("k"), s.number("s")};
    wrap(s.key_path("c"), [&] { map.with_claimed_s_contraction(k); return 0; });
  } else if (auto c = s.opt_number("c")) {
    wrap(s.key_path("c"), [&] { map.with_claimed_c(*c); return 0; });
  }
  return map;
}

}  // namespace

ModularSpec parse_space(const json& space) {
  Section s(space, "space");
  ModularSpec m = parse_space_section(s);
  if (s.has("dim")) s.unsigned_int("dim");
  s.reject_unknown();
  return m;
}

nlohmann::json space_to_json(const ModularSpec& m) {
  json j;
  j["family"] = to_string(m.family());
  switch (m.family()) {
    case Family::PPower:
      j["p"] = m.p();
      break;
    case Family::WeightedSum:
      j["p"] = m.p();
      j["weights"] = std::vector<double>(m.weights().begin(), m.weights().end());
      break;
    case Family::Orlicz:
      j["phi"] = to_string(m.integrand());
      j["quadrature_nodes"] = m.quadrature_nodes();
      if (m.integrand() == Integrand::Power) j["p"] = m.p();
      break;
    case Family::Planted:
      j["planted"] = to_string(m.planted_kind());
      break;
  }
  return j;
}

ProblemConfig parse_config(const json& root) {
  Section top(root, "");
  Section space = top.child("space");
  ProblemConfig cfg(parse_space_section(space));

  std::optional<std::size_t> dim;
  std::string dim_source;
  auto agree = [&](std::size_t d, const std::string& key) {
    if (d == 0) throw ConfigError(key, "dimension must be >= 1");
    if (dim && *dim != d) {
      throw ConfigError(key, "dimension " + std::to_string(d) + " disagrees with " + dim_source +
                                 " (" + std::to_string(*dim) + ")");
    }
    dim = d;
    dim_source = key;
  };

  if (space.has("dim")) agree(space.unsigned_int("dim"), "space.dim");
  space.reject_unknown();
  if (auto d = cfg.space.fixed_dim()) agree(*d, "space");

  if (top.has("map")) {
    Section map = top.child("map");
    cfg.map = parse_map_section(map);
    map.reject_unknown();
    if (auto d = cfg.map->fixed_dim()) agree(*d, "map");
  }
  if (top.has("initial_point")) {
    auto coords = top.numbers("initial_point");
    cfg.initial_point = wrap("initial_point", [&] { return Point(std::move(coords)); });
    agree(cfg.initial_point->dim(), "initial_point");
  }
  if (!dim) throw ConfigError("space.dim", "dimension is not determined by any key");
  cfg.dim = *dim;

  if (top.has("solve")) {
    Section s = top.child("solve");
    if (auto tol = s.opt_number("tol")) {
      if (!(*tol > 0.0)) throw ConfigError("solve.tol", "must be > 0");
      cfg.tol = *tol;
    }
    if (s.has("max_iter")) cfg.max_iter = s.unsigned_int("max_iter");
    s.reject_unknown();
  }
  if (top.has("check")) {
    Section s = top.child("check");
    if (s.has("trials")) {
      cfg.trials = s.unsigned_int("trials");
      if (cfg.trials < 1) throw ConfigError("check.trials", "must be >= 1");
    }
    if (auto sv = s.opt_number("s")) {
      if (!(*sv > 0.0 && *sv <= 1.0)) throw ConfigError("check.s", "must lie in (0, 1]");
      cfg.s = sv;
    }
    if (auto r = s.opt_number("fatou_ratio")) {
      if (!(*r > 0.0 && *r < 1.0)) throw ConfigError("check.fatou_ratio", "must lie in (0, 1)");
      cfg.fatou_ratio = *r;
    }
    if (s.has("fatou_steps")) {
      cfg.fatou_steps = s.unsigned_int("fatou_steps");
      if (cfg.fatou_steps < 1) throw ConfigError("check.fatou_steps", "must be >= 1");
    }
    s.reject_unknown();
  }
  if (top.has("chain")) {
    Section s = top.child("chain");
    if (s.has("N")) cfg.chain_n = s.unsigned_int("N");
    if (auto a = s.opt_number("alpha")) {
      if (!(*a >= 0.0)) throw ConfigError("chain.alpha", "must be >= 0");
      cfg.chain_alpha = a;
    }
    if (auto a = s.opt_number("alpha_scale")) {
      if (!(*a >= 0.0)) throw ConfigError("chain.alpha_scale", "must be >= 0");
      cfg.chain_alpha_scale = *a;
    }
    s.reject_unknown();
  }
  if (top.has("seed")) cfg.seed = top.unsigned_int("seed");
  if (top.has("out_dir")) cfg.out_dir = top.name("out_dir");
  top.reject_unknown();
  return cfg;
}

ProblemConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<file>", "cannot open " + path.string());
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("<file>", std::string("parse error in ") + path.string() + ": " + e.what());
  }
  return parse_config(root);
}

}  // namespace modspace::cli
