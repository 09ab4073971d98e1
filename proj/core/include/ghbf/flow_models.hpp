#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>

#include "ghbf/field.hpp"

namespace ghbf {

// Stratified, optionally rotating Boussinesq parameters. Re = +inf gives the
// ideal (Euler) system.
struct BoussinesqParams {
  double reynolds = std::numeric_limits<double>::infinity();
  double prandtl = 1.0;
  double buoyancy = 0.0;                  // a0
  std::array<double, 3> rotation{0, 0, 0};  // Omega; the Coriolis term is 2 Omega x u

  void validate() const;
  bool ideal() const { return std::isinf(reynolds); }
  double inverse_reynolds() const { return ideal() ? 0.0 : 1.0 / reynolds; }
  // 1 / (sigma Re)
  double inverse_peclet() const { return ideal() ? 0.0 : 1.0 / (prandtl * reynolds); }
};

// Prescribed heating Q(x, t) from a fixed catalog.
struct HeatingSpec {
  enum class Kind { zero, mode, pulse };
  Kind kind = Kind::zero;
  double amplitude = 0.0;
  std::array<int, 3> wave{1, 0, 0};  // integer mode vector of sin(k.x)
  double pulse_center = 0.0;
  double pulse_width = 1.0;

  static Kind parse_kind(const std::string& name);
  static std::string kind_name(Kind k);
  ScalarField evaluate(const GridPtr& grid, double t) const;
};

struct CompressibleParams {
  double mu = 0.0;            // shear viscosity
  double mu_v = 0.0;          // volume viscosity
  double gas_constant = 1.0;  // R in p = R rho theta
  double cv = 1.0;
  HeatingSpec heating;

  void validate() const;
};

struct IncompressibleState {
  VectorField u;
  ScalarField theta;
};

struct CompressibleState {
  VectorField u;
  ScalarField rho;
  ScalarField theta;
};

using FlowState = std::variant<IncompressibleState, CompressibleState>;

// Time derivatives matching a state; drho_dt is empty for incompressible flow.
struct Tendency {
  VectorField du_dt;
  ScalarField dtheta_dt;
  std::optional<ScalarField> drho_dt;
};

// Throws PreconditionError when ||div u||_2 > tol * ||grad u||_2.
void require_solenoidal(const VectorField& u, double tol = 1e-8);

// Inviscid rotating-buoyant Euler: du/dt = P(u x w - 2 Omega x u - a0 theta k),
// dtheta/dt = -u.grad theta. Viscous parameters in `params` are ignored.
Tendency euler_tendency(const IncompressibleState& state, const BoussinesqParams& params);

// Stratified Navier-Stokes: adds Re^-1 lap u and (sigma Re)^-1 lap theta.
Tendency boussinesq_tendency(const IncompressibleState& state, const BoussinesqParams& params);

// Pressure p removed by the projection (Bernoulli head minus |u|^2/2), zero mean.
ScalarField recover_pressure(const IncompressibleState& state, const BoussinesqParams& params);

// Compressible Navier-Stokes with ideal-gas closure p = R rho theta and
// varpi = p - (mu/3 + mu_v) div u; advective momentum form.
Tendency compressible_tendency(const CompressibleState& state, const CompressibleParams& params, double t);

// curl(du_dt)
VectorField vorticity_tendency(const Tendency& tendency);

// Closed-form vorticity right-hand sides for cross-checking curl(du_dt).
// Incompressible: curl(u x w) + 2 (Omega.grad) u - a0 perp_grad theta + Re^-1 lap w.
VectorField incompressible_vorticity_rhs(const IncompressibleState& state, const BoussinesqParams& params);
// Compressible: curl(u x w) + mu rho^-1 lap w + grad(rho^-1) x (mu lap u - grad varpi).
VectorField compressible_vorticity_rhs(const CompressibleState& state, const CompressibleParams& params);

// varpi = R rho theta - (mu/3 + mu_v) div u
ScalarField modified_pressure(const CompressibleState& state, const CompressibleParams& params);

}  // namespace ghbf
