#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ghbf/interpolation.hpp"
#include "ghbf/stretch_fold.hpp"
#include "ghbf/timestepper.hpp"

namespace ghbf {

// M x M marker lattice spanning a surface patch, connected as a quad mesh.
// Open patches have (M-1)^2 quads. Closed (spherical) patches wrap in the
// second index and collapse to a point at the poles, giving (M-1) M quads.
struct MarkerSurface {
  int m = 0;
  bool closed = false;
  double time = 0.0;
  std::vector<Point> points;  // index i * m + j

  // Square of edge `size` centred at `center` with unit normal along `axis`.
  static MarkerSurface plane(const Point& center, double size, int axis, int m);
  // Outward-oriented sphere.
  static MarkerSurface sphere(const Point& center, double radius, int m);

  std::size_t quad_count() const;
  std::array<std::size_t, 4> quad(std::size_t k) const;
  std::vector<Point> centroids() const;
  // Vector area of each quad: (diagonal_1 x diagonal_2) / 2.
  std::vector<Point> vector_areas() const;
};

// Midpoint rule: sum over quads of F(centroid) . area.
double surface_flux(const MarkerSurface& surface, const std::vector<Point>& values_at_centroids);
// Field sampled at centroids by exact Fourier summation.
double surface_flux(const MarkerSurface& surface, const VectorField& field);

// U_q = J / q at arbitrary points from separately interpolated J and q.
class PseudoVelocitySampler {
 public:
  explicit PseudoVelocitySampler(const MaskedVelocity& velocity);
  // Throws SurfaceInvalidatedError for the first point with |q| below the mask threshold.
  std::vector<Point> operator()(const std::vector<Point>& points, double t) const;

 private:
  SpectralInterpolator interp_;
  double threshold_;
};

// RK4 in the frozen field `velocity`.
MarkerSurface advect_markers(const MarkerSurface& surface, const MaskedVelocity& velocity, double dt);

// B = grad q x grad s and D_q = -grad(q div U_q) x grad s evaluated at points
// from smooth interpolated ingredients (no masked quotient is interpolated).
class StretchFoldSampler {
 public:
  StretchFoldSampler(const MaskedVelocity& velocity, const ScalarField& s);
  struct Values {
    std::vector<Point> b, d_q;
    std::vector<double> q;
  };
  Values operator()(const std::vector<Point>& points) const;
  double max_abs_q() const { return qmax_; }

 private:
  SpectralInterpolator interp_;
  double qmax_;
};

struct SurfaceSeedOptions {
  std::string kind = "plane";  // plane | sphere
  bool auto_center = true;
  Point center{0, 0, 0};
  int axis = -1;  // plane normal; -1 picks the largest |B| flux
  int m = 32;
  double size = 0.5;
  double margin = 0.1;  // require |q| >= margin max|q| at markers and centroids
  std::uint64_t rng_seed = 1;
  int max_attempts = 500;
};

// Rejection sampling against the initial q. Throws SurfaceInvalidatedError
// when no admissible placement exists (or an explicit centre is masked).
MarkerSurface seed_surface(const ScalarField& q, const VectorField& b, const SurfaceSeedOptions& options,
                           SurfaceSeedOptions* chosen = nullptr);

struct SurfaceFluxRow {
  double t = 0.0;
  double b_flux = 0.0;
  double dq_flux = 0.0;
  double dbflux_dt = 0.0;     // centred difference
  double rel_mismatch = 0.0;  // running ||dbflux_dt - dq_flux|| / ||dq_flux|| over rows so far
};

struct SurfaceFluxReport {
  std::vector<SurfaceFluxRow> rows;
  double final_mismatch = 0.0;
  double max_abs_dq_flux = 0.0;
  double b_flux_initial = 0.0;
  double max_b_flux_change = 0.0;  // max |Phi(t) - Phi(0)| / |Phi(0)|
  double dt = 0.0;
  SurfaceSeedOptions seed;
  MarkerSurface final_surface;
};

// Co-integrates the Boussinesq state and the surface (markers move with U_q
// through every RK4 stage) and compares d/dt of the B flux with the D_q flux.
SurfaceFluxReport surface_flux_check(const IncompressibleState& initial, const BoussinesqParams& params,
                                     const TendencyFn& tendency, double dt, int steps, double epsilon_rel,
                                     const SurfaceSeedOptions& seed,
                                     const std::function<void(const SurfaceFluxRow&)>& on_row = {});

SurfaceFluxReport surface_flux_check(const RunConfig& config,
                                     const std::function<void(const SurfaceFluxRow&)>& on_row = {});

SurfaceSeedOptions seed_options(const RunConfig& config);

}  // namespace ghbf
