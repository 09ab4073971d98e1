#include "ghbf/spectral_ops.hpp"

#include <cmath>
#include <string>

#include "ghbf/errors.hpp"

namespace ghbf {
namespace {

constexpr Complex I{0.0, 1.0};

// Calls fn(index, ikx, iky, ikz) over the half spectrum in storage order.
template <class Fn>
void for_each_mode(const Grid& g, Fn&& fn) {
  const int n = g.n(), nk = g.nkx();
  std::size_t s = 0;
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < nk; ++ix, ++s) fn(s, ix, iy, iz);
}

void apply_mask(const Grid& g, Spectrum& s) {
  const auto& mask = g.dealias_mask();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!mask[i]) s[i] = 0.0;
}

ScalarField derivative_of(const GridPtr& grid, const Spectrum& fs, int axis) {
  const Grid& g = *grid;
  Spectrum out(fs.size());
  for_each_mode(g, [&](std::size_t s, int ix, int iy, int iz) {
    int idx = axis == 0 ? ix : (axis == 1 ? iy : iz);
    out[s] = I * g.derivative_wavenumber(idx) * fs[s];
  });
  return inverse(grid, std::move(out));
}

}  // namespace

Spectrum forward(const ScalarField& f) {
  if (f.empty()) throw ConfigError("forward: empty field");
  Spectrum out;
  f.grid().forward(f.values(), out);
  return out;
}

ScalarField inverse(const GridPtr& grid, Spectrum spectrum) {
  RealBuffer out;
  grid->inverse(spectrum, out);
  return ScalarField(grid, std::move(out));
}

double spectral_l2_norm(const Grid& g, const Spectrum& s) {
  double sum = 0.0;
  const int nyq = g.n() / 2;
  for_each_mode(g, [&](std::size_t i, int ix, int, int) {
    double w = (ix == 0 || ix == nyq) ? 1.0 : 2.0;
    sum += w * std::norm(s[i]);
  });
  return std::sqrt(sum * g.volume());
}

ScalarField derivative(const ScalarField& f, int axis) { return derivative_of(f.grid_ptr(), forward(f), axis); }

VectorField gradient(const ScalarField& f) {
  Spectrum fs = forward(f);
  const auto& grid = f.grid_ptr();
  return VectorField(derivative_of(grid, fs, 0), derivative_of(grid, fs, 1), derivative_of(grid, fs, 2));
}

VectorField curl(const VectorField& v) {
  const GridPtr& grid = v.grid_ptr();
  const Grid& g = *grid;
  Spectrum a = forward(v[0]), b = forward(v[1]), c = forward(v[2]);
  Spectrum ox(a.size()), oy(a.size()), oz(a.size());
  for_each_mode(g, [&](std::size_t s, int ix, int iy, int iz) {
    double kx = g.derivative_wavenumber(ix), ky = g.derivative_wavenumber(iy), kz = g.derivative_wavenumber(iz);
    ox[s] = I * (ky * c[s] - kz * b[s]);
    oy[s] = I * (kz * a[s] - kx * c[s]);
    oz[s] = I * (kx * b[s] - ky * a[s]);
  });
  return VectorField(inverse(grid, std::move(ox)), inverse(grid, std::move(oy)), inverse(grid, std::move(oz)));
}

ScalarField divergence(const VectorField& v) {
  const GridPtr& grid = v.grid_ptr();
  const Grid& g = *grid;
  Spectrum a = forward(v[0]), b = forward(v[1]), c = forward(v[2]);
  Spectrum out(a.size());
  for_each_mode(g, [&](std::size_t s, int ix, int iy, int iz) {
    out[s] = I * (g.derivative_wavenumber(ix) * a[s] + g.derivative_wavenumber(iy) * b[s] +
                  g.derivative_wavenumber(iz) * c[s]);
  });
  return inverse(grid, std::move(out));
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  Spectrum fs = forward(f);
  for_each_mode(g, [&](std::size_t s, int ix, int iy, int iz) { fs[s] *= -g.k_squared(ix, iy, iz); });
  return inverse(f.grid_ptr(), std::move(fs));
}

VectorField laplacian(const VectorField& v) { return VectorField(laplacian(v[0]), laplacian(v[1]), laplacian(v[2])); }

VectorField perp_gradient(const ScalarField& f) {
  Spectrum fs = forward(f);
  const auto& grid = f.grid_ptr();
  return VectorField(derivative_of(grid, fs, 1), -derivative_of(grid, fs, 0), ScalarField(grid));
}

std::array<std::array<ScalarField, 3>, 3> velocity_gradient(const VectorField& u) {
  std::array<std::array<ScalarField, 3>, 3> out;
  for (int i = 0; i < 3; ++i) {
    Spectrum s = forward(u[i]);
    for (int j = 0; j < 3; ++j) out[i][j] = derivative_of(u.grid_ptr(), s, j);
  }
  return out;
}

SymmetricTensorField hessian(const ScalarField& f) {
  const GridPtr& grid = f.grid_ptr();
  const Grid& g = *grid;
  Spectrum fs = forward(f);
  auto second = [&](int a, int b) {
    Spectrum out(fs.size());
    for_each_mode(g, [&](std::size_t s, int ix, int iy, int iz) {
      const int idx[3] = {ix, iy, iz};
      out[s] = -g.derivative_wavenumber(idx[a]) * g.derivative_wavenumber(idx[b]) * fs[s];
    });
    return inverse(grid, std::move(out));
  };
  return SymmetricTensorField{second(0, 0), second(1, 1), second(2, 2), second(0, 1), second(0, 2), second(1, 2)};
}

SymmetricTensorField strain(const VectorField& u) {
  auto du = velocity_gradient(u);
  auto sym = [&](int i, int j) { return 0.5 * (du[i][j] + du[j][i]); };
  return SymmetricTensorField{du[0][0], du[1][1], du[2][2], sym(0, 1), sym(0, 2), sym(1, 2)};
}

ScalarField dealias(const ScalarField& f) {
  Spectrum s = forward(f);
  apply_mask(f.grid(), s);
  return inverse(f.grid_ptr(), std::move(s));
}

VectorField dealias(const VectorField& v) { return VectorField(dealias(v[0]), dealias(v[1]), dealias(v[2])); }

ScalarField multiply(const ScalarField& a, const ScalarField& b) { return dealias(pointwise::mul(a, b)); }

VectorField scale(const VectorField& v, const ScalarField& s) { return dealias(pointwise::scale(v, s)); }

VectorField cross(const VectorField& a, const VectorField& b) { return dealias(pointwise::cross(a, b)); }

ScalarField dot(const VectorField& a, const VectorField& b) { return dealias(pointwise::dot(a, b)); }

ScalarField advect(const VectorField& a, const ScalarField& f) { return dealias(pointwise::dot(a, gradient(f))); }

VectorField advect(const VectorField& a, const VectorField& v) {
  return VectorField(advect(a, v[0]), advect(a, v[1]), advect(a, v[2]));
}

VectorField leray_project(const VectorField& v, ScalarField* potential) {
  const GridPtr& grid = v.grid_ptr();
  const Grid& g = *grid;
  Spectrum a = forward(v[0]), b = forward(v[1]), c = forward(v[2]);
  Spectrum phi(potential ? a.size() : 0);
  for_each_mode(g, [&](std::size_t s, int ix, int iy, int iz) {
    double kx = g.derivative_wavenumber(ix), ky = g.derivative_wavenumber(iy), kz = g.derivative_wavenumber(iz);
    double k2 = kx * kx + ky * ky + kz * kz;
    if (k2 == 0.0) {
      if (potential) phi[s] = 0.0;
      return;
    }
    Complex kv = (kx * a[s] + ky * b[s] + kz * c[s]) / k2;
    a[s] -= kx * kv;
    b[s] -= ky * kv;
    c[s] -= kz * kv;
    if (potential) phi[s] = -I * kv;
  });
  if (potential) *potential = inverse(grid, std::move(phi));
  return VectorField(inverse(grid, std::move(a)), inverse(grid, std::move(b)), inverse(grid, std::move(c)));
}

ScalarField inverse_laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  Spectrum fs = forward(f);
  for_each_mode(g, [&](std::size_t s, int ix, int iy, int iz) {
    double k2 = g.k_squared(ix, iy, iz);
    fs[s] = k2 == 0.0 ? Complex{} : -fs[s] / k2;
  });
  return inverse(f.grid_ptr(), std::move(fs));
}

void require_positive(const ScalarField& f, const char* what) {
  double m = min_value(f);
  if (!(m > 0.0)) throw DomainError(std::string(what) + ": field must be strictly positive (min = " +
                                    std::to_string(m) + ")");
}

ScalarField reciprocal(const ScalarField& f) {
  require_positive(f, "reciprocal");
  ScalarField out(f.grid_ptr());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = 1.0 / f[i];
  return out;
}

ScalarField log_field(const ScalarField& f) {
  require_positive(f, "log");
  ScalarField out(f.grid_ptr());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::log(f[i]);
  return out;
}

}  // namespace ghbf
