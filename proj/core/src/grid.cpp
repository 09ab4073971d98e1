#include "ghbf/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <new>
#include <string>

#include "ghbf/errors.hpp"

namespace ghbf {
namespace {

// The FFTW planner is not thread-safe; execution with new-array calls is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void* fftw_aligned_alloc(std::size_t bytes) {
  void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (!p) throw std::bad_alloc();
  return p;
}

void fftw_aligned_free(void* p) noexcept { fftw_free(p); }

GridPtr Grid::create(int n, double box_length, double dealias_fraction) {
  if (n < 8 || !power_of_two(n))
    throw ConfigError("grid: n must be a power of two >= 8, got " + std::to_string(n));
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw ConfigError("grid: box_length must be positive and finite");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0))
    throw ConfigError("grid: dealias_fraction must lie in (0, 1]");
  return GridPtr(new Grid(n, box_length, dealias_fraction));
}

Grid::Grid(int n, double box_length, double dealias_fraction)
    : n_(n),
      box_length_(box_length),
      dealias_fraction_(dealias_fraction),
      k0_(2.0 * std::numbers::pi / box_length),
      cutoff_(static_cast<int>(std::floor(dealias_fraction * n / 2.0 + 1e-12))),
      size_(static_cast<std::size_t>(n) * n * n),
      spectral_size_(static_cast<std::size_t>(n) * n * (n / 2 + 1)) {
  deriv_k_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) deriv_k_[i] = (i == n / 2) ? 0.0 : k0_ * mode(i);

  dealias_mask_.assign(spectral_size_, 0);
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < nkx(); ++ix)
        dealias_mask_[spectral_index(ix, iy, iz)] =
            (std::abs(mode(ix)) <= cutoff_ && std::abs(mode(iy)) <= cutoff_ && std::abs(mode(iz)) <= cutoff_);

  RealBuffer real(size_);
  Spectrum spec(spectral_size_);
  std::lock_guard lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_r2c_3d(n, n, n, real.data(), reinterpret_cast<fftw_complex*>(spec.data()),
                                       FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_3d(n, n, n, reinterpret_cast<fftw_complex*>(spec.data()), real.data(),
                                       FFTW_ESTIMATE);
  if (!forward_plan_ || !inverse_plan_) throw Error("grid: FFTW planning failed");
}

Grid::~Grid() {
  std::lock_guard lock(planner_mutex());
  if (forward_plan_) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

bool Grid::retained(int ikx, int iky, int ikz) const { return dealias_mask_[spectral_index(ikx, iky, ikz)] != 0; }

bool Grid::same_as(const Grid& other) const {
  return this == &other || (n_ == other.n_ && box_length_ == other.box_length_ &&
                            dealias_fraction_ == other.dealias_fraction_);
}

void Grid::forward(std::span<const double> in, Spectrum& out) const {
  if (in.size() != size_) throw ConfigError("grid: forward transform input has wrong length");
  out.resize(spectral_size_);
  // Out-of-place r2c preserves its input; FFTW's signature is just non-const.
  double* src = const_cast<double*>(in.data());
  RealBuffer scratch;
  if (fftw_alignment_of(src) != 0) {
    scratch.assign(in.begin(), in.end());
    src = scratch.data();
  }
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), src, reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& c : out) c *= scale;
}

void Grid::inverse(Spectrum& in, RealBuffer& out) const {
  if (in.size() != spectral_size_) throw ConfigError("grid: inverse transform input has wrong length");
  out.resize(size_);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(in.data()),
                       out.data());
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!a.same_as(b))
    throw ConfigError("grid mismatch: n=" + std::to_string(a.n()) + " vs n=" + std::to_string(b.n()) +
                      " (or differing box length / dealias fraction)");
}

}  // namespace ghbf
