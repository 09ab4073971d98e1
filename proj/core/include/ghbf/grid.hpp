#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace ghbf {

using Complex = std::complex<double>;

// Allocator backed by fftw_malloc so every buffer carries FFTW's SIMD alignment.
template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() noexcept = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}
  T* allocate(std::size_t n);
  void deallocate(T* p, std::size_t) noexcept;
  template <class U>
  bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

void* fftw_aligned_alloc(std::size_t bytes);
void fftw_aligned_free(void* p) noexcept;

template <class T>
T* FftwAllocator<T>::allocate(std::size_t n) {
  return static_cast<T*>(fftw_aligned_alloc(n * sizeof(T)));
}
template <class T>
void FftwAllocator<T>::deallocate(T* p, std::size_t) noexcept {
  fftw_aligned_free(p);
}

using RealBuffer = std::vector<double, FftwAllocator<double>>;
// Half-complex spectrum in r2c layout: kx in [0, n/2] fastest, then ky, then kz.
using Spectrum = std::vector<Complex, FftwAllocator<Complex>>;

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

// Cubic triply-periodic lattice of n^3 points on [0, L)^3.
//
// Real samples are stored x-fastest: index = ix + n*(iy + n*iz).
// The forward transform is normalised by 1/n^3, so spectral coefficients are
// the Fourier amplitudes of the field. Derivative coefficients at the Nyquist
// index are zero; the dealias mask keeps modes with |k_i| <= fraction * n/2
// on every axis.
class Grid {
 public:
  static GridPtr create(int n, double box_length = 2.0 * std::numbers::pi,
                        double dealias_fraction = 2.0 / 3.0);
  ~Grid();
  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int n() const { return n_; }
  double box_length() const { return box_length_; }
  double dealias_fraction() const { return dealias_fraction_; }
  double dx() const { return box_length_ / n_; }
  double cell_volume() const { return dx() * dx() * dx(); }
  double volume() const { return box_length_ * box_length_ * box_length_; }
  // 2*pi / L
  double base_wavenumber() const { return k0_; }

  std::size_t size() const { return size_; }
  int nkx() const { return n_ / 2 + 1; }
  std::size_t spectral_size() const { return spectral_size_; }

  std::size_t index(int ix, int iy, int iz) const {
    return static_cast<std::size_t>(ix) +
           static_cast<std::size_t>(n_) * (static_cast<std::size_t>(iy) + static_cast<std::size_t>(n_) * iz);
  }
  std::size_t spectral_index(int ikx, int iky, int ikz) const {
    return static_cast<std::size_t>(ikx) +
           static_cast<std::size_t>(nkx()) * (static_cast<std::size_t>(iky) + static_cast<std::size_t>(n_) * ikz);
  }
  std::array<double, 3> position(int ix, int iy, int iz) const { return {ix * dx(), iy * dx(), iz * dx()}; }

  // Signed integer mode number of a storage index along y or z (Nyquist -> +n/2).
  int mode(int index) const { return index <= n_ / 2 ? index : index - n_; }
  // Scaled first-derivative wavenumber; zero at the Nyquist index.
  double derivative_wavenumber(int index) const { return deriv_k_[static_cast<std::size_t>(index)]; }
  // Scaled wavenumber used by second derivatives (Nyquist kept).
  double wavenumber(int index) const { return k0_ * mode(index); }
  // |k|^2 for a spectral index triple, scaled.
  double k_squared(int ikx, int iky, int ikz) const {
    double kx = wavenumber(ikx), ky = wavenumber(iky), kz = wavenumber(ikz);
    return kx * kx + ky * ky + kz * kz;
  }
  bool retained(int ikx, int iky, int ikz) const;
  // 1 where the dealias mask keeps the mode, indexed like a Spectrum.
  const std::vector<unsigned char>& dealias_mask() const { return dealias_mask_; }
  int dealias_cutoff() const { return cutoff_; }

  // Same lattice parameters (used for grid-mismatch checks).
  bool same_as(const Grid& other) const;

  void forward(std::span<const double> in, Spectrum& out) const;
  // Destroys the contents of `in`.
  void inverse(Spectrum& in, RealBuffer& out) const;

 private:
  Grid(int n, double box_length, double dealias_fraction);

  int n_;
  double box_length_;
  double dealias_fraction_;
  double k0_;
  int cutoff_;
  std::size_t size_;
  std::size_t spectral_size_;
  std::vector<double> deriv_k_;
  std::vector<unsigned char> dealias_mask_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

// Throws ConfigError unless both grids describe the same lattice.
void require_same_grid(const Grid& a, const Grid& b);

}  // namespace ghbf
