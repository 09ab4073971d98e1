#include "ghbf/mask.hpp"

#include <cmath>

#include "ghbf/errors.hpp"

namespace ghbf {

Mask::Mask(GridPtr grid, bool value) : grid_(std::move(grid)), keep_(grid_->size(), value ? 1 : 0) {}

Mask Mask::where_abs_at_least(const ScalarField& f, double threshold) {
  Mask m(f.grid_ptr(), false);
  for (std::size_t i = 0; i < f.size(); ++i) m.keep_[i] = std::abs(f[i]) >= threshold ? 1 : 0;
  return m;
}

std::size_t Mask::count() const {
  std::size_t c = 0;
  for (auto k : keep_) c += k;
  return c;
}

double Mask::excluded_fraction() const {
  return keep_.empty() ? 0.0 : 1.0 - static_cast<double>(count()) / static_cast<double>(keep_.size());
}

Mask Mask::eroded(int cells) const {
  if (cells <= 0) return *this;
  const Grid& g = *grid_;
  const int n = g.n();
  Mask cur = *this;
  // A cube structuring element is separable: erode along x, then y, then z.
  for (int axis = 0; axis < 3; ++axis) {
    Mask next(grid_, false);
    for (int iz = 0; iz < n; ++iz)
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          bool ok = true;
          for (int d = -cells; d <= cells && ok; ++d) {
            int jx = ix, jy = iy, jz = iz;
            if (axis == 0) jx = ((ix + d) % n + n) % n;
            if (axis == 1) jy = ((iy + d) % n + n) % n;
            if (axis == 2) jz = ((iz + d) % n + n) % n;
            ok = cur.keep_[g.index(jx, jy, jz)] != 0;
          }
          next.keep_[g.index(ix, iy, iz)] = ok ? 1 : 0;
        }
    cur = std::move(next);
  }
  return cur;
}

ScalarField zero_outside(const ScalarField& f, const Mask& m) {
  require_same_grid(f.grid(), m.grid());
  ScalarField out = f;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!m[i]) out[i] = 0.0;
  return out;
}

VectorField zero_outside(const VectorField& v, const Mask& m) {
  return VectorField(zero_outside(v[0], m), zero_outside(v[1], m), zero_outside(v[2], m));
}

}  // namespace ghbf
