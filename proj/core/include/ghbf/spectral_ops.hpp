#pragma once

#include <array>

#include "ghbf/field.hpp"

namespace ghbf {

Spectrum forward(const ScalarField& f);
// Consumes the spectrum (the c2r transform overwrites its input).
ScalarField inverse(const GridPtr& grid, Spectrum spectrum);

// Physical L2 norm recovered from Fourier coefficients (Parseval).
double spectral_l2_norm(const Grid& grid, const Spectrum& s);

// Derivatives are exact for resolved modes; first-derivative coefficients
// vanish at the Nyquist index. None of these apply the dealias mask.
ScalarField derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
VectorField curl(const VectorField& v);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);
// (d/dy f, -d/dx f, 0)
VectorField perp_gradient(const ScalarField& f);
// grad[i][j] = d u_i / d x_j
std::array<std::array<ScalarField, 3>, 3> velocity_gradient(const VectorField& u);
// H_ij = d^2 f / dx_i dx_j (first-derivative coefficients applied twice)
SymmetricTensorField hessian(const ScalarField& f);
// S_ij = (u_i,j + u_j,i) / 2
SymmetricTensorField strain(const VectorField& u);

ScalarField dealias(const ScalarField& f);
VectorField dealias(const VectorField& v);

// Nonlinear products: evaluated pointwise in physical space, then truncated
// by the dealias mask.
ScalarField multiply(const ScalarField& a, const ScalarField& b);
VectorField scale(const VectorField& v, const ScalarField& s);
VectorField cross(const VectorField& a, const VectorField& b);
ScalarField dot(const VectorField& a, const VectorField& b);
// a . grad f
ScalarField advect(const VectorField& a, const ScalarField& f);
// (a . grad) v
VectorField advect(const VectorField& a, const VectorField& v);

// Removes the gradient part of v. If `potential` is given it receives phi
// with v = P v + grad phi (zero mean).
VectorField leray_project(const VectorField& v, ScalarField* potential = nullptr);
// Inverse Laplacian of a zero-mean field (the mean mode is dropped).
ScalarField inverse_laplacian(const ScalarField& f);

// Pointwise 1/f and ln f. Throw DomainError if min f <= 0.
ScalarField reciprocal(const ScalarField& f);
ScalarField log_field(const ScalarField& f);
void require_positive(const ScalarField& f, const char* what);

}  // namespace ghbf
