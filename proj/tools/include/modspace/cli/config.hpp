#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "modspace/errors.hpp"
#include "modspace/map.hpp"
#include "modspace/modular.hpp"
#include "modspace/point.hpp"

namespace modspace::cli {

/// Malformed problem file. `key()` is the dotted path of the offending entry.
class ConfigError : public UsageError {
 public:
  ConfigError(std::string key, const std::string& message)
      : UsageError(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// A problem file (JSON). Recognized keys:
///
///   space.family            PPOWER | ORLICZ | WEIGHTED_SUM | PLANTED
///   space.p                 exponent (PPOWER, WEIGHTED_SUM, ORLICZ with phi POWER)
///   space.phi               POWER | EXP_MINUS_ONE | U_LOG
///   space.weights           [w_1, ..., w_d]
///   space.quadrature_nodes  N_q
///   space.planted           SIN_BUMP | ASYMMETRIC | ZERO_WEIGHT
///   space.dim               explicit dimension when nothing else fixes it
///   map.kind                AFFINE | SCALARWISE
///   map.function            HALF | LOGISTIC_DAMPED | CONST   (SCALARWISE)
///   map.lambda, map.value   parameters of LOGISTIC_DAMPED / CONST
///   map.matrix, map.offset  A (rows) and b (AFFINE)
///   map.c                   claimed contraction constant in [0, 1); with
///   map.k, map.s            present instead the s-contraction constants (c, k, s)
///   initial_point           [x_1, ..., x_d]
///   solve.tol, solve.max_iter
///   check.trials, check.s, check.fatou_ratio, check.fatou_steps
///   chain.N, chain.alpha, chain.alpha_scale
///   seed                    unsigned 64-bit
///   out_dir                 output directory
struct ProblemConfig {
  explicit ProblemConfig(ModularSpec space_spec) : space(std::move(space_spec)) {}

  ModularSpec space;
  std::size_t dim = 0;
  std::optional<MapSpec> map;
  std::optional<Point> initial_point;

  double tol = 1e-10;
  std::size_t max_iter = 1000;

  std::size_t trials = 10000;
  std::optional<double> s;
  double fatou_ratio = 0.5;
  // The tail starts at ratio^(steps/2); 128 halvings put it below rounding.
  std::size_t fatou_steps = 128;

  std::size_t chain_n = 30;
  std::optional<double> chain_alpha;
  double chain_alpha_scale = 1.0;

  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
};

ProblemConfig parse_config(const nlohmann::json& root);
ProblemConfig load_config(const std::filesystem::path& path);

ModularSpec parse_space(const nlohmann::json& space);
nlohmann::json space_to_json(const ModularSpec& m);

}  // namespace modspace::cli
