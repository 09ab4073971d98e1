#include "ghbf/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ghbf/errors.hpp"

namespace ghbf {
namespace {

void check(const ScalarField& a, const ScalarField& b) {
  if (a.empty() || b.empty()) throw ConfigError("field: operation on an empty field");
  require_same_grid(a.grid(), b.grid());
}

}  // namespace

ScalarField::ScalarField(GridPtr grid, double value) : grid_(std::move(grid)) {
  if (!grid_) throw ConfigError("field: null grid");
  values_.assign(grid_->size(), value);
}

ScalarField::ScalarField(GridPtr grid, RealBuffer values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw ConfigError("field: null grid");
  if (values_.size() != grid_->size()) throw ConfigError("field: sample count does not match grid");
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  check(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  check(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(double s) {
  for (auto& v : values_) v += s;
  return *this;
}

ScalarField& ScalarField::add_scaled(double s, const ScalarField& o) {
  check(*this, o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += s * o.values_[i];
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator-(ScalarField a) { return a *= -1.0; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }

VectorField::VectorField(const GridPtr& grid, std::array<double, 3> value)
    : c_{ScalarField(grid, value[0]), ScalarField(grid, value[1]), ScalarField(grid, value[2])} {}

VectorField::VectorField(ScalarField x, ScalarField y, ScalarField z) : c_{std::move(x), std::move(y), std::move(z)} {
  check(c_[0], c_[1]);
  check(c_[0], c_[2]);
}

VectorField& VectorField::operator+=(const VectorField& o) {
  for (int i = 0; i < 3; ++i) c_[i] += o.c_[i];
  return *this;
}
VectorField& VectorField::operator-=(const VectorField& o) {
  for (int i = 0; i < 3; ++i) c_[i] -= o.c_[i];
  return *this;
}
VectorField& VectorField::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}
VectorField& VectorField::add_scaled(double s, const VectorField& o) {
  for (int i = 0; i < 3; ++i) c_[i].add_scaled(s, o.c_[i]);
  return *this;
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator-(VectorField a) { return a *= -1.0; }
VectorField operator*(double s, VectorField a) { return a *= s; }

const ScalarField& SymmetricTensorField::operator()(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i == j) return i == 0 ? xx : (i == 1 ? yy : zz);
  if (i == 0) return j == 1 ? xy : xz;
  return yz;
}

ScalarField SymmetricTensorField::trace() const { return xx + yy + zz; }

namespace pointwise {

ScalarField mul(const ScalarField& a, const ScalarField& b) {
  check(a, b);
  ScalarField out(a.grid_ptr());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

ScalarField divide(const ScalarField& a, const ScalarField& b) {
  check(a, b);
  ScalarField out(a.grid_ptr());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] / b[i];
  return out;
}

ScalarField dot(const VectorField& a, const VectorField& b) {
  check(a[0], b[0]);
  ScalarField out(a.grid_ptr());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[0][i] * b[0][i] + a[1][i] * b[1][i] + a[2][i] * b[2][i];
  return out;
}

VectorField cross(const VectorField& a, const VectorField& b) {
  check(a[0], b[0]);
  VectorField out(a.grid_ptr());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[0][i] = a[1][i] * b[2][i] - a[2][i] * b[1][i];
    out[1][i] = a[2][i] * b[0][i] - a[0][i] * b[2][i];
    out[2][i] = a[0][i] * b[1][i] - a[1][i] * b[0][i];
  }
  return out;
}

VectorField scale(const VectorField& v, const ScalarField& s) {
  return VectorField(mul(v[0], s), mul(v[1], s), mul(v[2], s));
}

VectorField divide(const VectorField& v, const ScalarField& s) {
  return VectorField(divide(v[0], s), divide(v[1], s), divide(v[2], s));
}

VectorField apply(const SymmetricTensorField& t, const VectorField& v) {
  VectorField out(v.grid_ptr());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const ScalarField& tij = t(i, j);
      for (std::size_t p = 0; p < v.size(); ++p) out[i][p] += tij[p] * v[j][p];
    }
  return out;
}

}  // namespace pointwise

double l2_norm(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return std::sqrt(s * f.grid().cell_volume());
}

double l2_norm(const VectorField& v) {
  double a = l2_norm(v[0]), b = l2_norm(v[1]), c = l2_norm(v[2]);
  return std::sqrt(a * a + b * b + c * c);
}

double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double max_abs(const VectorField& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    m = std::max(m, std::sqrt(v[0][i] * v[0][i] + v[1][i] * v[1][i] + v[2][i] * v[2][i]));
  return m;
}

double max_component_abs(const VectorField& v) { return std::max({max_abs(v[0]), max_abs(v[1]), max_abs(v[2])}); }

double min_value(const ScalarField& f) {
  double m = std::numeric_limits<double>::infinity();
  for (double v : f.values()) m = std::min(m, v);
  return m;
}

double max_value(const ScalarField& f) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : f.values()) m = std::max(m, v);
  return m;
}

double integral(const ScalarField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().cell_volume();
}

double mean(const ScalarField& f) { return integral(f) / f.grid().volume(); }

bool all_finite(const ScalarField& f) {
  for (double v : f.values())
    if (!std::isfinite(v)) return false;
  return true;
}

bool all_finite(const VectorField& v) { return all_finite(v[0]) && all_finite(v[1]) && all_finite(v[2]); }

}  // namespace ghbf
