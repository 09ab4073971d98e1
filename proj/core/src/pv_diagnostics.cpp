#include "ghbf/pv_diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "ghbf/errors.hpp"
#include "ghbf/format.hpp"
#include "ghbf/spectral_ops.hpp"

namespace ghbf {
namespace {

void check_state(const IncompressibleState& s) { require_same_grid(s.u.grid(), s.theta.grid()); }

void check_tendency(const IncompressibleState& s, const Tendency& t) {
  require_same_grid(s.u.grid(), t.du_dt.grid());
  require_same_grid(s.u.grid(), t.dtheta_dt.grid());
}

// (a . grad) v without dealiasing
VectorField advect_pointwise(const VectorField& a, const VectorField& v) {
  VectorField out(a.grid_ptr());
  for (int c = 0; c < 3; ++c) out[c] = pointwise::dot(a, gradient(v[c]));
  return out;
}

}  // namespace

ScalarField potential_vorticity(const VectorField& omega, const ScalarField& theta) {
  require_same_grid(omega.grid(), theta.grid());
  return dot(omega, gradient(theta));
}

VectorField b_field(const ScalarField& q, const ScalarField& theta) {
  require_same_grid(q.grid(), theta.grid());
  return cross(gradient(q), gradient(theta));
}

VectorField absolute_vorticity(const VectorField& u, const BoussinesqParams& params) {
  VectorField w = curl(u);
  for (int c = 0; c < 3; ++c) w[c] += 2.0 * params.rotation[static_cast<std::size_t>(c)];
  return w;
}

ScalarField pv_time_derivative(const IncompressibleState& state, const BoussinesqParams& params,
                               const Tendency& tendency) {
  check_state(state);
  check_tendency(state, tendency);
  const VectorField w = absolute_vorticity(state.u, params);
  return pointwise::dot(curl(tendency.du_dt), gradient(state.theta)) +
         pointwise::dot(w, gradient(tendency.dtheta_dt));
}

ResidualReport ertel_residual(const IncompressibleState& state, const BoussinesqParams& params,
                              const Tendency& tendency) {
  check_state(state);
  check_tendency(state, tendency);
  const VectorField& u = state.u;
  const VectorField w = absolute_vorticity(u, params);
  const VectorField grad_theta = gradient(state.theta);
  const ScalarField q = potential_vorticity(w, state.theta);

  const VectorField dw_dt = curl(tendency.du_dt);
  const ScalarField local_w = pointwise::dot(dw_dt, grad_theta);
  const ScalarField local_theta = pointwise::dot(w, gradient(tendency.dtheta_dt));
  const ScalarField dq_dt = local_w + local_theta;
  const ScalarField u_grad_q = pointwise::dot(u, gradient(q));
  const ScalarField material = dq_dt + u_grad_q;

  // Ertel decomposition, term by term. In the ideal limit every grouped term
  // vanishes, so the scale comes from the individual pieces.
  const ScalarField advect_w = pointwise::dot(advect_pointwise(u, w), grad_theta);
  const ScalarField stretch = pointwise::dot(advect_pointwise(w, u), grad_theta);
  const ScalarField advect_theta = pointwise::dot(w, gradient(advect(u, state.theta)));
  const ScalarField decomposition = local_w + advect_w - stretch + local_theta + advect_theta;

  ResidualReport report;
  report.n = u.grid().n();
  report.add("q1A", measure(material - decomposition,
                            {&local_w, &local_theta, &u_grad_q, &advect_w, &stretch, &advect_theta}));
  report.add("q1B", measure(material, {&local_w, &local_theta, &u_grad_q}));
  report.provenance.emplace_back("max_abs_q", format_real(max_abs(q)));
  return report;
}

PvTendencyForms pv_tendency_forms(const IncompressibleState& state, const BoussinesqParams& params) {
  check_state(state);
  params.validate();
  const VectorField& u = state.u;
  const ScalarField& theta = state.theta;
  const Tendency t = boussinesq_tendency(state, params);
  const VectorField w = absolute_vorticity(u, params);
  const VectorField grad_theta = gradient(theta);
  const double re_inv = params.inverse_reynolds();
  const double pe_inv = params.inverse_peclet();

  PvTendencyForms f;
  {
    const VectorField material_w = curl(t.du_dt) + advect_pointwise(u, w);
    const VectorField stretch = advect_pointwise(w, u);
    const ScalarField material_theta = t.dtheta_dt + advect(u, theta);
    f.ertel = pointwise::dot(material_w - stretch, grad_theta) + pointwise::dot(w, gradient(material_theta));
  }
  const ScalarField lap_theta = laplacian(theta);
  f.buoyancy = params.buoyancy * pointwise::dot(perp_gradient(theta), grad_theta);
  f.substituted = re_inv * pointwise::dot(laplacian(curl(u)), grad_theta) +
                  pe_inv * pointwise::dot(w, gradient(lap_theta)) - f.buoyancy;
  VectorField flux = re_inv * cross(laplacian(u), grad_theta);
  flux.add_scaled(pe_inv, scale(w, lap_theta));
  f.divergence = divergence(flux);
  f.advection = dot(u, gradient(potential_vorticity(w, theta)));
  return f;
}

ResidualReport pv_tendency_report(const PvTendencyForms& f) {
  ResidualReport report;
  report.n = f.ertel.grid().n();
  const ScalarField* a = &f.advection;
  report.add("ens9-1v2", measure(f.ertel - f.substituted, {&f.ertel, &f.substituted, a}));
  report.add("ens9-2v3", measure(f.substituted - f.divergence, {&f.substituted, &f.divergence, a}));
  report.add("ens9-1v3", measure(f.ertel - f.divergence, {&f.ertel, &f.divergence, a}));
  report.add("ens9-buoyancy", measure(f.buoyancy, {&f.ertel, &f.substituted, &f.divergence, a}));
  return report;
}

VectorField pv_flux_excess(const IncompressibleState& state, const BoussinesqParams& params) {
  check_state(state);
  params.validate();
  VectorField v(state.u.grid_ptr());
  if (params.ideal()) return v;
  const VectorField w = absolute_vorticity(state.u, params);
  VectorField visc = cross(laplacian(state.u), gradient(state.theta));
  visc.add_scaled(1.0 / params.prandtl, scale(w, laplacian(state.theta)));
  v.add_scaled(-params.inverse_reynolds(), visc);
  return v;
}

VectorField pv_flux(const IncompressibleState& state, const BoussinesqParams& params) {
  const ScalarField q = potential_vorticity(absolute_vorticity(state.u, params), state.theta);
  return scale(state.u, q) + pv_flux_excess(state, params);
}

MaskedVelocity pseudo_velocity_incompressible(const IncompressibleState& state, const BoussinesqParams& params,
                                              double epsilon_rel) {
  ScalarField q = potential_vorticity(absolute_vorticity(state.u, params), state.theta);
  return make_masked_velocity(state.u, pv_flux_excess(state, params), std::move(q), epsilon_rel);
}

ResidualEntry ratio_entry(const ScalarField& f, double scale, const Mask* region, double masked_fraction) {
  ResidualEntry e;
  const double r = l2_norm(f, region);
  e.l2_rel = scale > 0.0 ? r / scale : r;
  e.linf = max_abs(f, region);
  e.masked_fraction = masked_fraction;
  if (!std::isfinite(e.l2_rel) || !std::isfinite(e.linf)) throw Error("residual evaluation produced a non-finite value");
  return e;
}

ResidualReport theorem1_residuals(const IncompressibleState& state, const BoussinesqParams& params,
                                  double epsilon_rel, int erosion, double d_q_scale) {
  check_state(state);
  const Tendency t = boussinesq_tendency(state, params);
  const MaskedVelocity vel = pseudo_velocity_incompressible(state, params, epsilon_rel);
  const ScalarField dq_dt = pv_time_derivative(state, params, t);
  StretchFoldFields sf = stretch_fold_balance(vel, dq_dt, state.theta, t.dtheta_dt, erosion);
  if (d_q_scale != 1.0) {
    sf.d_q *= d_q_scale;
    sf.residual = zero_outside(sf.db_dt - sf.transport - sf.d_q, vel.mask);
  }

  const Mask* region = &sf.region;
  ResidualReport report;
  report.n = state.u.grid().n();
  report.add("ens13-q", measure(sf.continuity_residual, {&dq_dt, &sf.div_flux}, region));
  report.add("ens13-theta", measure(sf.scalar_residual, {&t.dtheta_dt, &sf.scalar_advection}, region));
  report.add("ens14", measure(sf.residual, {&sf.db_dt, &sf.transport, &sf.d_q}, region));
  report.add("ens15-div", ratio_entry(sf.div_d_q, sf.grad_d_q_norm, region, region->excluded_fraction()));
  report.provenance.emplace_back("epsilon_rel", format_real(epsilon_rel));
  report.provenance.emplace_back("erosion_cells", std::to_string(erosion));
  report.provenance.emplace_back("masked_fraction", format_real(vel.masked_fraction));
  report.provenance.emplace_back("div_Uq_l2", format_real(l2_norm(sf.div_pseudo_velocity, region)));
  report.provenance.emplace_back("Dq_l2", format_real(l2_norm(sf.d_q, region)));
  report.provenance.emplace_back("reynolds", format_real(params.reynolds));
  report.provenance.emplace_back("prandtl", format_real(params.prandtl));
  return report;
}

ResidualReport b_ideal_residual(const VectorField& u, const ScalarField& q, const ScalarField& theta) {
  require_same_grid(u.grid(), q.grid());
  require_same_grid(u.grid(), theta.grid());
  const ScalarField dq_dt = -advect(u, q);
  const ScalarField dtheta_dt = -advect(u, theta);
  const VectorField grad_q = gradient(q);
  const VectorField grad_theta = gradient(theta);
  const VectorField b = cross(grad_q, grad_theta);
  const VectorField db_dt =
      pointwise::cross(gradient(dq_dt), grad_theta) + pointwise::cross(grad_q, gradient(dtheta_dt));

  // u x B has degree below the Nyquist index, so the unfiltered product is exact.
  const VectorField transport = curl(pointwise::cross(u, b));
  const VectorField curl_form = db_dt - transport;

  const VectorField advective = advect_pointwise(u, b);
  const VectorField stretching = advect_pointwise(b, u);
  const VectorField material_form = db_dt + advective - stretching;
  const VectorField difference = curl_form - material_form;

  ResidualReport report;
  report.n = u.grid().n();
  report.add("B1-curl-form", measure(curl_form, {&db_dt, &transport}));
  report.add("B1-material-form", measure(material_form, {&db_dt, &advective, &stretching}));
  report.add("B1-forms-agree", measure(difference, {&db_dt, &transport, &advective, &stretching}));
  return report;
}

}  // namespace ghbf
