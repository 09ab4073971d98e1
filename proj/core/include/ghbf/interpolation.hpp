#pragma once

#include <array>
#include <vector>

#include "ghbf/field.hpp"

namespace ghbf {

using Point = std::array<double, 3>;

// Exact Fourier-sum evaluation of band-limited fields at arbitrary points.
//
// Several fields are bundled so they share the per-point exponential
// tables. Modes whose coefficient falls below `prune` times the largest
// coefficient of their field are skipped.
class SpectralInterpolator {
 public:
  explicit SpectralInterpolator(std::vector<ScalarField> fields, double prune = 0.0);

  std::size_t field_count() const { return fields_.size(); }
  const Grid& grid() const { return *grid_; }

  // values[f] for every bundled field f at point p.
  void evaluate(const Point& p, double* values) const;
  // result[i * field_count() + f]; parallel over points.
  std::vector<double> evaluate(const std::vector<Point>& points) const;

 private:
  struct Column {
    int iy, iz;
    int kx_begin, kx_end;
    std::size_t offset;  // into coeffs_, field-major per kx
  };

  GridPtr grid_;
  std::vector<ScalarField> fields_;
  std::vector<Column> columns_;
  std::vector<Complex> coeffs_;  // per column: for kx in range, for field: weighted coefficient
};

}  // namespace ghbf
