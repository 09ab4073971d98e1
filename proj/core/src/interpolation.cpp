#include "ghbf/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "ghbf/errors.hpp"
#include "ghbf/parallel.hpp"
#include "ghbf/spectral_ops.hpp"

namespace ghbf {

SpectralInterpolator::SpectralInterpolator(std::vector<ScalarField> fields, double prune)
    : fields_(std::move(fields)) {
  if (fields_.empty()) throw ConfigError("interpolator: no fields");
  grid_ = fields_[0].grid_ptr();
  for (const auto& f : fields_) require_same_grid(*grid_, f.grid());

  const Grid& g = *grid_;
  const int n = g.n(), nk = g.nkx(), nyq = n / 2;
  const std::size_t nf = fields_.size();
  std::vector<Spectrum> spectra;
  std::vector<double> thresholds;
  for (const auto& f : fields_) {
    spectra.push_back(forward(f));
    double m = 0.0;
    for (const auto& c : spectra.back()) m = std::max(m, std::abs(c));
    thresholds.push_back(prune * m);
  }

  // f(x) = sum_k c_k e^{ik.x}; the half spectrum covers kx >= 0 and the
  // remaining modes are conjugates, hence weight 2 on interior kx and Re(.) at
  // the end. Nyquist planes carry no derivative-consistent phase and are
  // evaluated as cosines, which the same rule reproduces.
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy) {
      int first = -1, last = -1;
      for (int ix = 0; ix < nk; ++ix) {
        std::size_t s = g.spectral_index(ix, iy, iz);
        for (std::size_t f = 0; f < nf; ++f)
          if (std::abs(spectra[f][s]) > thresholds[f] && spectra[f][s] != Complex{}) {
            if (first < 0) first = ix;
            last = ix;
            break;
          }
      }
      if (first < 0) continue;
      Column col{iy, iz, first, last + 1, coeffs_.size()};
      for (int ix = first; ix <= last; ++ix) {
        double w = (ix == 0 || ix == nyq) ? 1.0 : 2.0;
        std::size_t s = g.spectral_index(ix, iy, iz);
        for (std::size_t f = 0; f < nf; ++f) coeffs_.push_back(w * spectra[f][s]);
      }
      columns_.push_back(col);
    }
}

void SpectralInterpolator::evaluate(const Point& p, double* values) const {
  const Grid& g = *grid_;
  const int n = g.n(), nk = g.nkx();
  const std::size_t nf = fields_.size();
  const double k0 = g.base_wavenumber();
  std::vector<Complex> ex(static_cast<std::size_t>(nk)), ey(static_cast<std::size_t>(n)),
      ez(static_cast<std::size_t>(n));
  for (int i = 0; i < nk; ++i) ex[i] = std::polar(1.0, k0 * g.mode(i) * p[0]);
  for (int i = 0; i < n; ++i) {
    ey[i] = std::polar(1.0, k0 * g.mode(i) * p[1]);
    ez[i] = std::polar(1.0, k0 * g.mode(i) * p[2]);
  }
  // Plain real arithmetic: std::complex products carry NaN-recovery branches
  // that keep this loop from vectorising.
  std::vector<double> acc(nf, 0.0), pre(nf), pim(nf);
  for (const auto& col : columns_) {
    std::fill(pre.begin(), pre.end(), 0.0);
    std::fill(pim.begin(), pim.end(), 0.0);
    const Complex* c = coeffs_.data() + col.offset;
    for (int ix = col.kx_begin; ix < col.kx_end; ++ix) {
      const double er = ex[ix].real(), ei = ex[ix].imag();
      for (std::size_t f = 0; f < nf; ++f, ++c) {
        const double cr = c->real(), ci = c->imag();
        pre[f] += cr * er - ci * ei;
        pim[f] += cr * ei + ci * er;
      }
    }
    const double yr = ey[col.iy].real(), yi = ey[col.iy].imag();
    const double zr = ez[col.iz].real(), zi = ez[col.iz].imag();
    const double er = yr * zr - yi * zi, ei = yr * zi + yi * zr;
    for (std::size_t f = 0; f < nf; ++f) acc[f] += pre[f] * er - pim[f] * ei;
  }
  for (std::size_t f = 0; f < nf; ++f) values[f] = acc[f];
}

std::vector<double> SpectralInterpolator::evaluate(const std::vector<Point>& points) const {
  const std::size_t nf = fields_.size();
  std::vector<double> out(points.size() * nf);
  parallel_for(points.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) evaluate(points[i], out.data() + i * nf);
  });
  return out;
}

}  // namespace ghbf
