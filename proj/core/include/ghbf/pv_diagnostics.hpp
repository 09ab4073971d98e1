#pragma once

#include "ghbf/flow_models.hpp"
#include "ghbf/residual.hpp"
#include "ghbf/stretch_fold.hpp"

namespace ghbf {

// q = omega . grad theta (dealiased). Pass omega + 2 Omega for the rotating form.
ScalarField potential_vorticity(const VectorField& omega, const ScalarField& theta);
// B = grad q x grad theta (dealiased).
VectorField b_field(const ScalarField& q, const ScalarField& theta);

// omega + 2 Omega
VectorField absolute_vorticity(const VectorField& u, const BoussinesqParams& params);

// Rows "q1A" (Ertel decomposition of Dq/Dt) and "q1B" (Dq/Dt itself, relative
// to its local and advective parts). dq/dt comes from the chain rule on the
// supplied tendency.
ResidualReport ertel_residual(const IncompressibleState& state, const BoussinesqParams& params,
                              const Tendency& tendency);

// Dq/Dt three ways, using boussinesq_tendency for the first.
struct PvTendencyForms {
  ScalarField ertel;        // (D omega/Dt - omega.grad u).grad theta + omega.grad(D theta/Dt)
  ScalarField substituted;  // Re^-1 lap omega.grad theta + (sigma Re)^-1 omega.grad lap theta - a0 perp_grad theta.grad theta
  ScalarField divergence;   // div(Re^-1 lap u x grad theta + (sigma Re)^-1 omega lap theta)
  ScalarField buoyancy;     // a0 perp_grad theta . grad theta, identically zero
  ScalarField advection;    // u.grad q; sets the scale when every form vanishes (Re -> inf)
};
PvTendencyForms pv_tendency_forms(const IncompressibleState& state, const BoussinesqParams& params);
// Pairwise differences "ens9-1v2", "ens9-2v3", "ens9-1v3" and "ens9-buoyancy".
ResidualReport pv_tendency_report(const PvTendencyForms& forms);

// V = -Re^-1 (lap u x grad theta + sigma^-1 omega lap theta), zero when ideal
VectorField pv_flux_excess(const IncompressibleState& state, const BoussinesqParams& params);
// J = q u + V
VectorField pv_flux(const IncompressibleState& state, const BoussinesqParams& params);
// U_q = J / q where |q| >= epsilon_rel max|q|.
MaskedVelocity pseudo_velocity_incompressible(const IncompressibleState& state, const BoussinesqParams& params,
                                              double epsilon_rel);

// dq/dt = curl(du_dt).grad theta + omega.grad(dtheta_dt)
ScalarField pv_time_derivative(const IncompressibleState& state, const BoussinesqParams& params,
                               const Tendency& tendency);

// Rows "ens13-q", "ens13-theta", "ens14" and "ens15-div" on the unmasked
// region eroded by `erosion` cells. `d_q_scale` multiplies D_q before the ens14
// balance (1 for the real check; other values serve as a negative control).
ResidualReport theorem1_residuals(const IncompressibleState& state, const BoussinesqParams& params,
                                  double epsilon_rel, int erosion = 2, double d_q_scale = 1.0);

// Passive scalars q, theta advected by solenoidal u: rows "B1-curl-form",
// "B1-material-form" and "B1-forms-agree".
ResidualReport b_ideal_residual(const VectorField& u, const ScalarField& q, const ScalarField& theta);

// Ratio row helper: l2 of f over region divided by `scale` (absolute if scale is 0).
ResidualEntry ratio_entry(const ScalarField& f, double scale, const Mask* region, double masked_fraction);

}  // namespace ghbf
