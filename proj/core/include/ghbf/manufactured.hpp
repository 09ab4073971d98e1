#pragma once

#include <cstdint>
#include <string>

#include "ghbf/flow_models.hpp"
#include "ghbf/random_fields.hpp"

namespace ghbf {

// u = (A sin kz + C cos ky, B sin kx + A cos kz, C sin ky + B cos kx), a
// Beltrami field with curl u = k u.
VectorField abc_flow(const GridPtr& grid, double a, double b, double c, int k = 1);

struct IncompressibleSpec {
  // random | abc | shear (u = (amplitude sin z, 0, 0)) | zero
  std::string velocity = "random";
  // random | cos_z | zero
  std::string theta = "random";
  std::uint64_t seed = 7;
  double velocity_kmax = 8.0;
  double velocity_amplitude = 1.0;
  double velocity_envelope = 2.0;
  double theta_kmax = 8.0;
  double theta_amplitude = 1.0;
  double theta_envelope = 2.0;
  double abc_a = 1.0, abc_b = 1.0, abc_c = 1.0;
  // abc only: random solenoidal part with this RMS relative to velocity_amplitude
  double velocity_perturbation = 0.0;
};

// Solenoidal initial state from the catalog above.
IncompressibleState make_incompressible_state(const GridPtr& grid, const IncompressibleSpec& spec);

// rho = rho_mean + rho_amplitude sin x sin y
// u = velocity_amplitude ABC(abc_*) + compressive_amplitude (sin x, sin y, sin z)
// theta = temperature_mean + temperature_amplitude cos(temperature_wave z)
struct CompressibleSpec {
  double rho_mean = 2.0;
  double rho_amplitude = 0.3;
  double velocity_amplitude = 0.1;
  double abc_a = 1.0, abc_b = 1.0, abc_c = 1.0;
  double compressive_amplitude = 0.05;
  double temperature_mean = 1.0;
  double temperature_amplitude = 0.1;
  int temperature_wave = 1;
};

CompressibleState make_compressible_state(const GridPtr& grid, const CompressibleSpec& spec);

// Parameters used by the stock verification suites.
BoussinesqParams stock_boussinesq_params();  // Re = 100, sigma = 1, a0 = 1, Omega = (0, 0, 0.5)
CompressibleParams stock_compressible_params();

}  // namespace ghbf
