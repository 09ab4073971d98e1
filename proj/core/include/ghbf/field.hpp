#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <utility>

#include "ghbf/grid.hpp"

namespace ghbf {

// Real samples of a scalar on a Grid, x-fastest.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridPtr grid, double value = 0.0);
  ScalarField(GridPtr grid, RealBuffer values);

  // Samples f(x, y, z) at every lattice point.
  template <class F>
  static ScalarField from_function(const GridPtr& grid, F&& f) {
    ScalarField out(grid);
    const int n = grid->n();
    const double h = grid->dx();
    std::size_t i = 0;
    for (int iz = 0; iz < n; ++iz)
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) out.values_[i++] = f(ix * h, iy * h, iz * h);
    return out;
  }

  bool empty() const { return !grid_; }
  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& at(int ix, int iy, int iz) { return values_[grid_->index(ix, iy, iz)]; }
  double at(int ix, int iy, int iz) const { return values_[grid_->index(ix, iy, iz)]; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
  ScalarField& operator+=(double s);
  // this += s * o
  ScalarField& add_scaled(double s, const ScalarField& o);

 private:
  GridPtr grid_;
  RealBuffer values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a);
ScalarField operator*(double s, ScalarField a);
ScalarField operator*(ScalarField a, double s);

class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(const GridPtr& grid, std::array<double, 3> value = {0.0, 0.0, 0.0});
  VectorField(ScalarField x, ScalarField y, ScalarField z);

  template <class F>
  static VectorField from_function(const GridPtr& grid, F&& f) {
    VectorField out(grid);
    const int n = grid->n();
    const double h = grid->dx();
    std::size_t i = 0;
    for (int iz = 0; iz < n; ++iz)
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix, ++i) {
          std::array<double, 3> v = f(ix * h, iy * h, iz * h);
          for (int c = 0; c < 3; ++c) out.c_[c][i] = v[c];
        }
    return out;
  }

  bool empty() const { return c_[0].empty(); }
  const Grid& grid() const { return c_[0].grid(); }
  const GridPtr& grid_ptr() const { return c_[0].grid_ptr(); }
  std::size_t size() const { return c_[0].size(); }

  ScalarField& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const ScalarField& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::array<double, 3> at(std::size_t i) const { return {c_[0][i], c_[1][i], c_[2][i]}; }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  VectorField& add_scaled(double s, const VectorField& o);

 private:
  std::array<ScalarField, 3> c_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator-(VectorField a);
VectorField operator*(double s, VectorField a);

// Six independent components of a symmetric 3x3 tensor field.
struct SymmetricTensorField {
  ScalarField xx, yy, zz, xy, xz, yz;

  const ScalarField& operator()(int i, int j) const;
  ScalarField trace() const;
};

// Plain pointwise algebra on grid samples, without dealiasing. Used when a
// product is the final quantity (not differentiated afterwards).
namespace pointwise {
ScalarField mul(const ScalarField& a, const ScalarField& b);
ScalarField divide(const ScalarField& a, const ScalarField& b);
ScalarField dot(const VectorField& a, const VectorField& b);
VectorField cross(const VectorField& a, const VectorField& b);
VectorField scale(const VectorField& v, const ScalarField& s);
// v / s componentwise
VectorField divide(const VectorField& v, const ScalarField& s);
// (T v)_i = T_ij v_j
VectorField apply(const SymmetricTensorField& t, const VectorField& v);
}  // namespace pointwise

// Norms are volume-weighted: l2 = sqrt(sum f^2 dV).
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField& v);
double max_abs(const ScalarField& f);
double max_abs(const VectorField& v);  // max |v| (Euclidean magnitude)
double max_component_abs(const VectorField& v);
double min_value(const ScalarField& f);
double max_value(const ScalarField& f);
double integral(const ScalarField& f);
double mean(const ScalarField& f);
bool all_finite(const ScalarField& f);
bool all_finite(const VectorField& v);

}  // namespace ghbf
