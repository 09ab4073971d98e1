#include "ghbf/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ghbf/errors.hpp"
#include "ghbf/spectral_ops.hpp"

namespace ghbf {
namespace {

// Modes are visited in a fixed integer order and every coefficient inside the
// ball is drawn, so the same seed gives the same field on any grid that
// resolves it.
Spectrum draw_spectrum(const Grid& g, const BandLimitedSpec& spec, std::mt19937_64& rng) {
  Spectrum s(g.spectral_size(), Complex{});
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = g.n(), nyq = n / 2;
  const double kmax2 = spec.kmax * spec.kmax;
  const int kc = static_cast<int>(std::floor(std::min(spec.kmax, 256.0)));
  auto weight = [&](double k2) {
    return spec.envelope > 0.0 ? std::exp(-k2 / (2.0 * spec.envelope * spec.envelope)) : 1.0;
  };
  for (int mz = -kc; mz <= kc; ++mz)
    for (int my = -kc; my <= kc; ++my)
      for (int mx = 0; mx <= kc; ++mx) {
        double k2 = double(mx) * mx + double(my) * my + double(mz) * mz;
        if (k2 == 0.0 || k2 > kmax2) continue;
        // kx = 0 plane: draw one of each conjugate pair, mirror the other.
        if (mx == 0 && !(mz > 0 || (mz == 0 && my > 0))) continue;
        double w = weight(k2);
        Complex c(normal(rng) * w, normal(rng) * w);
        if (mx >= nyq || std::abs(my) >= nyq || std::abs(mz) >= nyq) continue;
        int iy = (my + n) % n, iz = (mz + n) % n;
        s[g.spectral_index(mx, iy, iz)] = c;
        if (mx == 0) s[g.spectral_index(0, (n - iy) % n, (n - iz) % n)] = std::conj(c);
      }
  return s;
}

double rms(const VectorField& v) {
  double s = 0.0;
  for (int c = 0; c < 3; ++c)
    for (double x : v[c].values()) s += x * x;
  return std::sqrt(s / static_cast<double>(v.size()));
}

void check_spec(const BandLimitedSpec& spec) {
  if (!(spec.kmax >= 0.0)) throw ConfigError("random_bandlimited: kmax must be >= 0");
  if (!std::isfinite(spec.amplitude)) throw ConfigError("random_bandlimited: amplitude must be finite");
}

}  // namespace

ScalarField random_bandlimited(const GridPtr& grid, const BandLimitedSpec& spec) {
  check_spec(spec);
  std::mt19937_64 rng(spec.seed);
  ScalarField f = inverse(grid, draw_spectrum(*grid, spec, rng));
  double r = std::sqrt(l2_norm(f) * l2_norm(f) / grid->volume());
  if (r > 0.0) f *= spec.amplitude / r;
  return f;
}

VectorField random_bandlimited_vector(const GridPtr& grid, const BandLimitedSpec& spec, bool solenoidal) {
  check_spec(spec);
  std::mt19937_64 rng(spec.seed);
  Spectrum a = draw_spectrum(*grid, spec, rng);
  Spectrum b = draw_spectrum(*grid, spec, rng);
  Spectrum c = draw_spectrum(*grid, spec, rng);
  VectorField v(inverse(grid, std::move(a)), inverse(grid, std::move(b)), inverse(grid, std::move(c)));
  if (solenoidal) v = leray_project(v);
  double r = rms(v);
  if (r > 0.0) v *= spec.amplitude / r;
  return v;
}

}  // namespace ghbf
