#include "ghbf/manufactured.hpp"

#include <cmath>

#include "ghbf/errors.hpp"
#include "ghbf/spectral_ops.hpp"

namespace ghbf {

VectorField abc_flow(const GridPtr& grid, double a, double b, double c, int k) {
  const double kk = k * grid->base_wavenumber();
  return VectorField::from_function(grid, [=](double x, double y, double z) {
    return std::array<double, 3>{a * std::sin(kk * z) + c * std::cos(kk * y), b * std::sin(kk * x) + a * std::cos(kk * z),
                                 c * std::sin(kk * y) + b * std::cos(kk * x)};
  });
}

IncompressibleState make_incompressible_state(const GridPtr& grid, const IncompressibleSpec& spec) {
  IncompressibleState s;
  const double k0 = grid->base_wavenumber();
  if (spec.velocity == "random") {
    s.u = random_bandlimited_vector(grid, {spec.seed, spec.velocity_kmax, spec.velocity_amplitude, spec.velocity_envelope},
                                    true);
  } else if (spec.velocity == "abc") {
    s.u = abc_flow(grid, spec.abc_a, spec.abc_b, spec.abc_c);
    s.u *= spec.velocity_amplitude;
    if (spec.velocity_perturbation != 0.0)
      s.u += random_bandlimited_vector(grid,
                                       {spec.seed, spec.velocity_kmax,
                                        spec.velocity_perturbation * spec.velocity_amplitude, spec.velocity_envelope},
                                       true);
  } else if (spec.velocity == "shear") {
    const double a = spec.velocity_amplitude;
    s.u = VectorField::from_function(grid, [=](double, double, double z) {
      return std::array<double, 3>{a * std::sin(k0 * z), 0.0, 0.0};
    });
  } else if (spec.velocity == "zero") {
    s.u = VectorField(grid);
  } else {
    throw ConfigError("unknown init_velocity '" + spec.velocity + "' (expected random, abc, shear or zero)");
  }

  if (spec.theta == "random") {
    // distinct stream from the velocity
    s.theta = random_bandlimited(
        grid, {spec.seed ^ 0x9e3779b97f4a7c15ull, spec.theta_kmax, spec.theta_amplitude, spec.theta_envelope});
  } else if (spec.theta == "cos_z") {
    const double a = spec.theta_amplitude;
    s.theta = ScalarField::from_function(grid, [=](double, double, double z) { return a * std::cos(k0 * z); });
  } else if (spec.theta == "zero") {
    s.theta = ScalarField(grid);
  } else {
    throw ConfigError("unknown init_theta '" + spec.theta + "' (expected random, cos_z or zero)");
  }
  return s;
}

CompressibleState make_compressible_state(const GridPtr& grid, const CompressibleSpec& spec) {
  const double k0 = grid->base_wavenumber();
  CompressibleState s;
  s.rho = ScalarField::from_function(grid, [&](double x, double y, double) {
    return spec.rho_mean + spec.rho_amplitude * std::sin(k0 * x) * std::sin(k0 * y);
  });
  s.u = abc_flow(grid, spec.abc_a, spec.abc_b, spec.abc_c);
  s.u *= spec.velocity_amplitude;
  const double c = spec.compressive_amplitude;
  s.u += VectorField::from_function(grid, [=](double x, double y, double z) {
    return std::array<double, 3>{c * std::sin(k0 * x), c * std::sin(k0 * y), c * std::sin(k0 * z)};
  });
  s.theta = ScalarField::from_function(grid, [&](double, double, double z) {
    return spec.temperature_mean + spec.temperature_amplitude * std::cos(spec.temperature_wave * k0 * z);
  });
  return s;
}

BoussinesqParams stock_boussinesq_params() {
  BoussinesqParams p;
  p.reynolds = 100.0;
  p.prandtl = 1.0;
  p.buoyancy = 1.0;
  p.rotation = {0.0, 0.0, 0.5};
  return p;
}

CompressibleParams stock_compressible_params() {
  CompressibleParams p;
  p.mu = 0.05;
  p.mu_v = 0.02;
  p.gas_constant = 1.0;
  p.cv = 2.5;
  p.heating.kind = HeatingSpec::Kind::mode;
  p.heating.amplitude = 0.1;
  p.heating.wave = {1, 1, 0};
  return p;
}

}  // namespace ghbf
