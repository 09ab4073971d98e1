#pragma once

#include <string>

#include "ghbf/field.hpp"
#include "ghbf/mask.hpp"

namespace ghbf {

// Pseudo-velocity U_q = J / q, defined where |q| >= epsilon * max|q|.
//
// The flux is split as J = q u + V with a smooth carrier velocity u, so
// U_q = u + V / q. Derivatives of U_q are taken through the quotient rule on V
// alone; in the advective limit (V = 0) U_q is u exactly and no division
// happens. Markers interpolate u, V and q separately.
struct MaskedVelocity {
  VectorField field;  // U_q on the mask, zero elsewhere
  Mask mask;
  double masked_fraction = 0.0;
  double epsilon = 0.0;
  VectorField flux;     // J
  VectorField carrier;  // u
  VectorField excess;   // V = J - q u
  ScalarField density;
  std::string gauge;
};

// Throws WholeFieldMaskedError when q vanishes identically.
Mask projection_mask(const ScalarField& q, double epsilon_rel);

// Flux given whole: carrier zero, V = J.
MaskedVelocity make_masked_velocity(VectorField flux, ScalarField q, double epsilon_rel, std::string gauge = "");
MaskedVelocity make_masked_velocity(VectorField carrier, VectorField excess, ScalarField q, double epsilon_rel,
                                    std::string gauge = "");

// D_q = -grad(q div U_q) x grad s, with q div U_q = q div u + div V - V.grad q / q.
// Zero outside the velocity mask.
VectorField d_q_vector(const ScalarField& q, const MaskedVelocity& velocity, const ScalarField& s);

// All pieces of the transport law dB/dt - curl(U_q x B) = D_q for B = grad q x grad s,
// evaluated instantaneously from tendencies of q and s.
struct StretchFoldFields {
  Mask region;  // velocity mask eroded by the requested number of cells
  VectorField b;
  VectorField db_dt;
  VectorField transport;  // curl(U_q x B)
  VectorField d_q;
  VectorField residual;   // db_dt - transport - d_q
  ScalarField div_pseudo_velocity;
  ScalarField div_d_q;    // trace of the product-rule Jacobian of D_q
  double grad_d_q_norm = 0.0;  // Frobenius L2 norm of that Jacobian over region
  ScalarField continuity_residual;  // dq/dt + div J
  ScalarField div_flux;
  ScalarField scalar_residual;      // ds/dt + U_q.grad s
  ScalarField scalar_advection;     // U_q.grad s
};

StretchFoldFields stretch_fold_balance(const MaskedVelocity& velocity, const ScalarField& dq_dt,
                                       const ScalarField& s, const ScalarField& ds_dt, int erosion = 2);

}  // namespace ghbf
