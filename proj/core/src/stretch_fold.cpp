#include "ghbf/stretch_fold.hpp"

#include <array>
#include <cmath>

#include "ghbf/errors.hpp"
#include "ghbf/residual.hpp"
#include "ghbf/spectral_ops.hpp"

namespace ghbf {
namespace {

using Mat3 = std::array<std::array<ScalarField, 3>, 3>;

Mat3 full(const SymmetricTensorField& t) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = t(i, j);
  return m;
}

// Smooth ingredients of q div U_q = P - f / q and its derivatives, where
// P = div V + q div u and f = V . grad q.
struct QuotientParts {
  VectorField grad_q;
  ScalarField div_carrier;
  ScalarField div_excess;
  ScalarField p;
  ScalarField f;
  VectorField grad_f;
  VectorField grad_p;
};

QuotientParts quotient_parts(const ScalarField& q, const MaskedVelocity& v) {
  QuotientParts p;
  p.grad_q = gradient(q);
  p.div_carrier = divergence(v.carrier);
  p.div_excess = divergence(v.excess);
  p.p = p.div_excess + multiply(q, p.div_carrier);
  p.f = dot(v.excess, p.grad_q);
  p.grad_f = gradient(p.f);
  p.grad_p = gradient(p.p);
  return p;
}

// grad(q div U_q) on the mask via the quotient rule; zero elsewhere.
VectorField grad_q_div_u(const ScalarField& q, const QuotientParts& p, const Mask& mask, ScalarField* g_out,
                         VectorField* grad_h_out) {
  VectorField grad_g(q.grid_ptr());
  VectorField grad_h(q.grid_ptr());
  ScalarField g(q.grid_ptr());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!mask[i]) continue;
    double h = p.f[i] / q[i];
    g[i] = p.p[i] - h;
    for (int c = 0; c < 3; ++c) {
      grad_h[c][i] = (p.grad_f[c][i] - h * p.grad_q[c][i]) / q[i];
      grad_g[c][i] = p.grad_p[c][i] - grad_h[c][i];
    }
  }
  if (g_out) *g_out = std::move(g);
  if (grad_h_out) *grad_h_out = std::move(grad_h);
  return grad_g;
}

}  // namespace

Mask projection_mask(const ScalarField& q, double epsilon_rel) {
  if (!(epsilon_rel > 0.0)) throw PreconditionError("epsilon_rel must be > 0");
  double qmax = max_abs(q);
  if (!(qmax > 0.0)) throw WholeFieldMaskedError("q vanishes everywhere; pseudo-velocity undefined on the whole grid");
  return Mask::where_abs_at_least(q, epsilon_rel * qmax);
}

MaskedVelocity make_masked_velocity(VectorField carrier, VectorField excess, ScalarField q, double epsilon_rel,
                                    std::string gauge) {
  require_same_grid(carrier.grid(), q.grid());
  require_same_grid(excess.grid(), q.grid());
  MaskedVelocity v;
  v.mask = projection_mask(q, epsilon_rel);
  v.masked_fraction = v.mask.excluded_fraction();
  v.epsilon = epsilon_rel;
  v.field = VectorField(q.grid_ptr());
  for (std::size_t i = 0; i < q.size(); ++i)
    if (v.mask[i])
      for (int c = 0; c < 3; ++c) v.field[c][i] = carrier[c][i] + excess[c][i] / q[i];
  v.flux = scale(carrier, q) + excess;
  v.carrier = std::move(carrier);
  v.excess = std::move(excess);
  v.density = std::move(q);
  v.gauge = std::move(gauge);
  return v;
}

MaskedVelocity make_masked_velocity(VectorField flux, ScalarField q, double epsilon_rel, std::string gauge) {
  VectorField zero(q.grid_ptr());
  return make_masked_velocity(std::move(zero), std::move(flux), std::move(q), epsilon_rel, std::move(gauge));
}

VectorField d_q_vector(const ScalarField& q, const MaskedVelocity& velocity, const ScalarField& s) {
  require_same_grid(q.grid(), velocity.flux.grid());
  require_same_grid(q.grid(), s.grid());
  QuotientParts p = quotient_parts(q, velocity);
  VectorField grad_g = grad_q_div_u(q, p, velocity.mask, nullptr, nullptr);
  return zero_outside(-pointwise::cross(grad_g, gradient(s)), velocity.mask);
}

StretchFoldFields stretch_fold_balance(const MaskedVelocity& velocity, const ScalarField& dq_dt,
                                       const ScalarField& s, const ScalarField& ds_dt, int erosion) {
  const ScalarField& q = velocity.density;
  const VectorField& u = velocity.carrier;
  const VectorField& v = velocity.excess;
  const Mask& mask = velocity.mask;
  require_same_grid(q.grid(), s.grid());
  require_same_grid(q.grid(), dq_dt.grid());
  require_same_grid(q.grid(), ds_dt.grid());

  StretchFoldFields out;
  out.region = mask.eroded(erosion);

  QuotientParts p = quotient_parts(q, velocity);
  const VectorField grad_s = gradient(s);
  // Not truncated: dq/dt enters unfiltered, and B has degree below the Nyquist index.
  out.b = pointwise::cross(p.grad_q, grad_s);
  out.db_dt = pointwise::cross(gradient(dq_dt), grad_s) + pointwise::cross(p.grad_q, gradient(ds_dt));

  ScalarField g;
  VectorField grad_h;
  VectorField grad_g = grad_q_div_u(q, p, mask, &g, &grad_h);

  // curl(U x B) = U div B - B div U + (B.grad) U - (U.grad) B with U = u + V / q,
  // expanded by the quotient rule so only u, V, B and q are differentiated.
  const auto grad_u = velocity_gradient(u);
  const auto grad_v = velocity_gradient(v);
  const auto grad_b = velocity_gradient(out.b);
  const ScalarField div_b = divergence(out.b);
  out.transport = VectorField(q.grid_ptr());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!mask[i]) continue;
    const double qi = q[i];
    const double gv = p.div_excess[i] - p.f[i] / qi;  // q div(V / q)
    const double b_grad_q = out.b[0][i] * p.grad_q[0][i] + out.b[1][i] * p.grad_q[1][i] + out.b[2][i] * p.grad_q[2][i];
    for (int c = 0; c < 3; ++c) {
      double b_grad_u = 0.0, u_grad_b = 0.0, b_grad_v = 0.0, v_grad_b = 0.0;
      for (int k = 0; k < 3; ++k) {
        b_grad_u += out.b[k][i] * grad_u[c][k][i];
        u_grad_b += u[k][i] * grad_b[c][k][i];
        b_grad_v += out.b[k][i] * grad_v[c][k][i];
        v_grad_b += v[k][i] * grad_b[c][k][i];
      }
      const double carried = u[c][i] * div_b[i] - out.b[c][i] * p.div_carrier[i] + b_grad_u - u_grad_b;
      const double hidden = (v[c][i] * div_b[i] - out.b[c][i] * gv + b_grad_v - v[c][i] * b_grad_q / qi - v_grad_b) / qi;
      out.transport[c][i] = carried + hidden;
    }
  }
  out.d_q = zero_outside(-pointwise::cross(grad_g, grad_s), mask);
  out.residual = zero_outside(out.db_dt - out.transport - out.d_q, mask);

  out.div_pseudo_velocity = ScalarField(q.grid_ptr());
  for (std::size_t i = 0; i < q.size(); ++i)
    if (mask[i]) out.div_pseudo_velocity[i] = g[i] / q[i];

  out.div_flux = divergence(velocity.flux);
  out.continuity_residual = dq_dt + out.div_flux;
  const ScalarField u_dot_grad_s = pointwise::dot(u, grad_s);
  const ScalarField v_dot_grad_s = pointwise::dot(v, grad_s);
  out.scalar_advection = ScalarField(q.grid_ptr());
  for (std::size_t i = 0; i < q.size(); ++i)
    if (mask[i]) out.scalar_advection[i] = u_dot_grad_s[i] + v_dot_grad_s[i] / q[i];
  out.scalar_residual = zero_outside(ds_dt + out.scalar_advection, mask);

  // Jacobian of D_q = -(a x b), a = grad g, b = grad s, by the product rule.
  // d_i a_j = P_ij - d_i[(f_j - h q_j) / q].
  const Mat3 h_div = full(hessian(p.p));
  const Mat3 h_f = full(hessian(p.f));
  const Mat3 h_q = full(hessian(q));
  const Mat3 h_s = full(hessian(s));
  out.div_d_q = ScalarField(q.grid_ptr());
  double jac2 = 0.0;
  const double dv = q.grid().cell_volume();
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!mask[i]) continue;
    const double qi = q[i];
    const double h = p.f[i] / qi;
    double da[3][3];  // da[i][j] = d_i a_j
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double num = p.grad_f[c][i] - h * p.grad_q[c][i];
        double dnum = h_f[r][c][i] - grad_h[r][i] * p.grad_q[c][i] - h * h_q[r][c][i];
        da[r][c] = h_div[r][c][i] - (dnum * qi - num * p.grad_q[r][i]) / (qi * qi);
      }
    const double a[3] = {grad_g[0][i], grad_g[1][i], grad_g[2][i]};
    const double b[3] = {grad_s[0][i], grad_s[1][i], grad_s[2][i]};
    double jac[3][3];  // jac[r][c] = d_r D_c
    for (int r = 0; r < 3; ++r) {
      const double* dar = da[r];
      const double dbr[3] = {h_s[r][0][i], h_s[r][1][i], h_s[r][2][i]};
      jac[r][0] = -((dar[1] * b[2] - dar[2] * b[1]) + (a[1] * dbr[2] - a[2] * dbr[1]));
      jac[r][1] = -((dar[2] * b[0] - dar[0] * b[2]) + (a[2] * dbr[0] - a[0] * dbr[2]));
      jac[r][2] = -((dar[0] * b[1] - dar[1] * b[0]) + (a[0] * dbr[1] - a[1] * dbr[0]));
    }
    out.div_d_q[i] = jac[0][0] + jac[1][1] + jac[2][2];
    if (out.region[i])
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) jac2 += jac[r][c] * jac[r][c] * dv;
  }
  out.grad_d_q_norm = std::sqrt(jac2);
  return out;
}

}  // namespace ghbf
