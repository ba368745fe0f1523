#include "modspace/map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "modspace/errors.hpp"

namespace modspace {

MapSpec MapSpec::affine(std::vector<std::vector<double>> matrix, Point offset) {
  const std::size_t d = offset.dim();
  if (matrix.size() != d) throw UsageError("affine map: matrix rows must match offset dimension");
  MapSpec t;
  t.kind_ = MapKind::Affine;
  t.dim_ = d;
  t.matrix_.reserve(d * d);
  for (const auto& row : matrix) {
    if (row.size() != d) throw UsageError("affine map: matrix must be square");
    for (double a : row) {
      if (!std::isfinite(a)) throw UsageError("affine map: matrix entries must be finite");
      t.matrix_.push_back(a);
    }
  }
  t.offset_ = std::move(offset);
  return t;
}

MapSpec MapSpec::half() {
  MapSpec t;
  t.scalar_ = ScalarMap::Half;
  return t;
}

MapSpec MapSpec::logistic_damped(double lambda) {
  if (!std::isfinite(lambda)) throw UsageError("logistic_damped: lambda must be finite");
  MapSpec t;
  t.scalar_ = ScalarMap::LogisticDamped;
  t.param_ = lambda;
  return t;
}

MapSpec MapSpec::constant(double value) {
  if (!std::isfinite(value)) throw UsageError("constant map: value must be finite");
  MapSpec t;
  t.scalar_ = ScalarMap::Const;
  t.param_ = value;
  return t;
}

std::optional<std::size_t> MapSpec::fixed_dim() const {
  if (kind_ == MapKind::Affine) return dim_;
  return std::nullopt;
}

void MapSpec::check_dim(std::size_t dim) const {
  if (kind_ == MapKind::Affine) require_same_dim(dim_, dim, "affine map");
}

MapSpec& MapSpec::with_claimed_c(double c) {
  if (!(c >= 0.0 && c < 1.0)) throw UsageError("claimed contraction constant must lie in [0, 1)");
  c_claimed_ = c;
  return *this;
}

MapSpec& MapSpec::with_claimed_s_contraction(SContraction k) {
  if (!(k.c > std::max(1.0, k.k))) throw UsageError("s-contraction needs c > max{1, k}");
  if (!(k.s > 0.0 && k.s <= 1.0)) throw UsageError("s-contraction needs s in (0, 1]");
  s_claimed_ = k;
  return *this;
}

void MapSpec::apply_once(std::span<const double> in, std::span<double> out) const {
  const std::size_t d = in.size();
  if (kind_ == MapKind::Affine) {
    for (std::size_t i = 0; i < d; ++i) {
      double acc = (*offset_)[i];
      for (std::size_t j = 0; j < d; ++j) acc += matrix_[i * d + j] * in[j];
      out[i] = acc;
    }
    return;
  }
  for (std::size_t i = 0; i < d; ++i) {
    const double u = in[i];
    switch (scalar_) {
      case ScalarMap::Half:
        out[i] = u / 2.0;
        break;
      case ScalarMap::LogisticDamped:
        out[i] = param_ * u / (1.0 + std::abs(u));
        break;
      case ScalarMap::Const:
        out[i] = param_;
        break;
    }
  }
}

std::vector<double> MapSpec::apply(std::span<const double> x, std::size_t times) const {
  check_dim(x.size());
  std::vector<double> cur(x.begin(), x.end());
  std::vector<double> next(x.size());
  for (std::size_t n = 0; n < times; ++n) {
    apply_once(cur, next);
    cur.swap(next);
  }
  return cur;
}

Point MapSpec::operator()(const Point& x) const {
  auto y = apply(x.coords());
  if (!all_finite(y)) throw NonFiniteError("map image of " + x.to_string() + " overflowed");
  return Point(std::move(y));
}

std::string MapSpec::describe() const {
  if (kind_ == MapKind::Affine) return "AFFINE(d=" + std::to_string(dim_) + ")";
  std::string out = std::string("SCALARWISE ") + to_string(scalar_);
  if (scalar_ != ScalarMap::Half) out += "(" + std::to_string(param_) + ")";
  return out;
}

const char* to_string(ScalarMap s) {
  switch (s) {
    case ScalarMap::Half:
      return "HALF";
    case ScalarMap::LogisticDamped:
      return "LOGISTIC_DAMPED";
    case ScalarMap::Const:
      return "CONST";
  }
  return "?";
}

}  // namespace modspace
