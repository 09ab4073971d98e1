#include "ghbf/compressible_diag.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "ghbf/errors.hpp"
#include "ghbf/format.hpp"
#include "ghbf/pv_diagnostics.hpp"
#include "ghbf/spectral_ops.hpp"

namespace ghbf {
namespace {

void check_state(const CompressibleState& s) {
  require_same_grid(s.u.grid(), s.rho.grid());
  require_same_grid(s.u.grid(), s.theta.grid());
  require_positive(s.rho, "density");
}

// grad rho or grad ln rho
VectorField projection_direction(const ScalarField& rho, ProjectionKind kind) {
  if (kind == ProjectionKind::density) return gradient(rho);
  return gradient(log_field(rho));
}

ScalarField apply_pointwise(const ScalarField& rho, double (FamilySpec::*f)(double) const, const FamilySpec& fam) {
  ScalarField out(rho.grid_ptr());
  for (std::size_t i = 0; i < rho.size(); ++i) out[i] = (fam.*f)(rho[i]);
  return out;
}

// Pieces shared by the balance checks.
struct Balance {
  VectorField omega;
  ScalarField q;
  VectorField flux;
  Tendency tendency;
  ScalarField dq_dt;
  ScalarField div_flux;
};

Balance balance(const CompressibleState& state, const CompressibleParams& params, ProjectionKind kind,
                const GaugeSpec& gauge, double t) {
  check_state(state);
  Balance b;
  b.omega = curl(state.u);
  b.q = projection_q(b.omega, state.rho, kind);
  b.flux = current_density(state, params, kind, gauge);
  b.tendency = compressible_tendency(state, params, t);
  b.dq_dt = projection_time_derivative(state, b.tendency, kind);
  b.div_flux = divergence(b.flux);
  return b;
}

}  // namespace

ProjectionKind parse_projection_kind(const std::string& name) {
  if (name == "density") return ProjectionKind::density;
  if (name == "log_density") return ProjectionKind::log_density;
  throw ConfigError("unknown projection kind '" + name + "' (expected density or log_density)");
}

std::string projection_kind_name(ProjectionKind k) {
  return k == ProjectionKind::density ? "density" : "log_density";
}

GaugeSpec GaugeSpec::parse(const std::string& phi, const std::string& psi) {
  GaugeSpec g;
  if (phi == "zero") g.phi = Phi::zero;
  else if (phi == "sin_x") g.phi = Phi::sin_x;
  else if (phi == "cos_yz") g.phi = Phi::cos_yz;
  else throw ConfigError("unknown gauge_phi '" + phi + "' (expected zero, sin_x or cos_yz)");
  if (psi == "identity") g.psi = Psi::identity;
  else if (psi == "square") g.psi = Psi::square;
  else if (psi == "log") g.psi = Psi::log;
  else throw ConfigError("unknown gauge_psi '" + psi + "' (expected identity, square or log)");
  return g;
}

std::vector<GaugeSpec> GaugeSpec::catalog() {
  std::vector<GaugeSpec> out;
  for (Phi p : {Phi::zero, Phi::sin_x, Phi::cos_yz})
    for (Psi s : {Psi::identity, Psi::square, Psi::log}) out.push_back(GaugeSpec{p, s});
  return out;
}

std::string GaugeSpec::name() const {
  static const char* phis[] = {"zero", "sin_x", "cos_yz"};
  static const char* psis[] = {"identity", "square", "log"};
  return std::string(phis[static_cast<int>(phi)]) + "/" + psis[static_cast<int>(psi)];
}

ScalarField GaugeSpec::phi_field(const GridPtr& grid) const {
  const double k = grid->base_wavenumber();
  switch (phi) {
    case Phi::zero: return ScalarField(grid);
    case Phi::sin_x: return ScalarField::from_function(grid, [k](double x, double, double) { return std::sin(k * x); });
    case Phi::cos_yz:
      return ScalarField::from_function(grid,
                                        [k](double, double y, double z) { return std::cos(k * y) * std::cos(k * z); });
  }
  return ScalarField(grid);
}

ScalarField GaugeSpec::psi_of(const ScalarField& rho) const {
  switch (psi) {
    case Psi::identity: return rho;
    case Psi::square: return pointwise::mul(rho, rho);
    case Psi::log: return log_field(rho);
  }
  return rho;
}

VectorField GaugeSpec::term(const ScalarField& rho) const {
  if (trivial()) return VectorField(rho.grid_ptr());
  return cross(gradient(phi_field(rho.grid_ptr())), gradient(psi_of(rho)));
}

FamilySpec FamilySpec::parse(const std::string& name) {
  for (const FamilySpec& f : catalog())
    if (f.name() == name) return f;
  throw ConfigError("unknown family '" + name + "' (expected identity, square_half, log or exp_clipped)");
}

std::vector<FamilySpec> FamilySpec::catalog() {
  return {FamilySpec{Kind::identity}, FamilySpec{Kind::square_half}, FamilySpec{Kind::log},
          FamilySpec{Kind::exp_clipped}};
}

std::string FamilySpec::name() const {
  switch (kind) {
    case Kind::identity: return "identity";
    case Kind::square_half: return "square_half";
    case Kind::log: return "log";
    case Kind::exp_clipped: return "exp_clipped";
  }
  return "identity";
}

double FamilySpec::phi(double r) const {
  switch (kind) {
    case Kind::identity: return r;
    case Kind::square_half: return 0.5 * r * r;
    case Kind::log:
      if (!(r > 0.0)) throw DomainError("log family needs positive density");
      return std::log(r);
    case Kind::exp_clipped: return r <= clip ? std::exp(r) : std::exp(clip) * (1.0 + r - clip);
  }
  return r;
}

double FamilySpec::dphi(double r) const {
  switch (kind) {
    case Kind::identity: return 1.0;
    case Kind::square_half: return r;
    case Kind::log:
      if (!(r > 0.0)) throw DomainError("log family needs positive density");
      return 1.0 / r;
    case Kind::exp_clipped: return std::exp(std::min(r, clip));
  }
  return 1.0;
}

double FamilySpec::d2phi(double r) const {
  switch (kind) {
    case Kind::identity: return 0.0;
    case Kind::square_half: return 1.0;
    case Kind::log:
      if (!(r > 0.0)) throw DomainError("log family needs positive density");
      return -1.0 / (r * r);
    case Kind::exp_clipped: return r <= clip ? std::exp(r) : 0.0;
  }
  return 0.0;
}

ScalarField projection_q(const VectorField& omega, const ScalarField& rho, ProjectionKind kind) {
  require_same_grid(omega.grid(), rho.grid());
  if (kind == ProjectionKind::log_density) require_positive(rho, "projection_q: density");
  return dot(omega, projection_direction(rho, kind));
}

VectorField current_excess(const CompressibleState& state, const CompressibleParams& params, ProjectionKind kind,
                           const GaugeSpec& gauge) {
  check_state(state);
  params.validate();
  const VectorField omega = curl(state.u);
  const ScalarField div_u = divergence(state.u);
  VectorField j(state.u.grid_ptr());
  if (kind == ProjectionKind::density) {
    j += scale(omega, multiply(state.rho, div_u));
    if (params.mu != 0.0) j.add_scaled(-params.mu, cross(laplacian(state.u), gradient(log_field(state.rho))));
  } else {
    j += scale(omega, div_u);
    if (params.mu != 0.0) j.add_scaled(params.mu, cross(laplacian(state.u), gradient(reciprocal(state.rho))));
  }
  if (!gauge.trivial()) j += gauge.term(state.rho);
  return j;
}

VectorField current_density(const CompressibleState& state, const CompressibleParams& params, ProjectionKind kind,
                            const GaugeSpec& gauge) {
  const ScalarField q = projection_q(curl(state.u), state.rho, kind);
  return scale(state.u, q) + current_excess(state, params, kind, gauge);
}

ScalarField projection_time_derivative(const CompressibleState& state, const Tendency& tendency,
                                       ProjectionKind kind) {
  check_state(state);
  if (!tendency.drho_dt) throw PreconditionError("compressible tendency without drho_dt");
  const ScalarField& rho_t = *tendency.drho_dt;
  const VectorField omega = curl(state.u);
  const VectorField dw_dt = curl(tendency.du_dt);
  if (kind == ProjectionKind::density)
    return pointwise::dot(dw_dt, gradient(state.rho)) + pointwise::dot(omega, gradient(rho_t));
  // d/dt grad ln rho = grad(rho_t / rho) = (grad rho_t - (rho_t / rho) grad rho) / rho
  const VectorField grad_rho = gradient(state.rho);
  const VectorField grad_rho_t = gradient(rho_t);
  VectorField g(state.u.grid_ptr());
  for (std::size_t i = 0; i < state.rho.size(); ++i) {
    const double r = state.rho[i];
    for (int c = 0; c < 3; ++c) g[c][i] = (grad_rho_t[c][i] - rho_t[i] / r * grad_rho[c][i]) / r;
  }
  return pointwise::dot(dw_dt, gradient(log_field(state.rho))) + pointwise::dot(omega, g);
}

ResidualReport quasi_conservation_residuals(const CompressibleState& state, const CompressibleParams& params,
                                            ProjectionKind kind, const GaugeSpec& gauge, double t) {
  const Balance b = balance(state, params, kind, gauge, t);
  ResidualReport report;
  report.n = state.u.grid().n();

  // The gauge-free form is the pressure-free balance stated for each kind.
  {
    const ScalarField div0 = gauge.trivial() ? b.div_flux : divergence(current_density(state, params, kind, GaugeSpec{}));
    const char* name = kind == ProjectionKind::density ? "q-calc2" : "proj2B-divergence";
    report.add(name, measure(b.dq_dt + div0, {&b.dq_dt, &div0}));
  }
  report.add("q1d-continuity", measure(b.dq_dt + b.div_flux, {&b.dq_dt, &b.div_flux}));

  const ScalarField q_rho_t = pointwise::mul(b.q, *b.tendency.drho_dt);
  const ScalarField j_grad_rho = pointwise::dot(b.flux, gradient(state.rho));
  report.add("q1d-density", measure(q_rho_t + j_grad_rho, {&q_rho_t, &j_grad_rho}));

  if (kind == ProjectionKind::log_density) {
    // Dq/Dt = (-omega div u + mu rho^-1 lap omega).grad ln rho - omega.grad(div u)
    const ScalarField material = b.dq_dt + pointwise::dot(state.u, gradient(b.q));
    const ScalarField div_u = divergence(state.u);
    const VectorField grad_log = gradient(log_field(state.rho));
    const ScalarField compress = -pointwise::mul(div_u, pointwise::dot(b.omega, grad_log));
    const ScalarField visc =
        params.mu * pointwise::dot(pointwise::divide(laplacian(b.omega), state.rho), grad_log);
    const ScalarField stretch = -pointwise::dot(b.omega, gradient(div_u));
    report.add("proj2B-material", measure(material - compress - visc - stretch, {&material, &compress, &visc, &stretch}));
  }
  report.provenance.emplace_back("kind", projection_kind_name(kind));
  report.provenance.emplace_back("gauge", gauge.name());
  return report;
}

ResidualReport impermeability_check(const CompressibleState& state, const CompressibleParams& params,
                                    ProjectionKind kind, const GaugeSpec& gauge) {
  check_state(state);
  const VectorField omega = curl(state.u);
  const ScalarField q = projection_q(omega, state.rho, kind);
  const VectorField flux = current_density(state, params, kind, gauge);
  const VectorField grad_rho = gradient(state.rho);
  const ScalarField j_grad_rho = pointwise::dot(flux, grad_rho);
  const ScalarField q_div = pointwise::mul(q, divergence(scale(state.u, state.rho)));

  ResidualReport report;
  report.n = state.u.grid().n();
  report.add("impermeability", measure(j_grad_rho - q_div, {&j_grad_rho, &q_div}));

  const VectorField g = gauge.term(state.rho);
  const ScalarField g_dot = pointwise::dot(g, grad_rho);
  ScalarField bound(state.u.grid_ptr());
  for (std::size_t i = 0; i < bound.size(); ++i) {
    auto a = g.at(i);
    auto r = grad_rho.at(i);
    bound[i] = std::sqrt((a[0] * a[0] + a[1] * a[1] + a[2] * a[2]) * (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]));
  }
  report.add("impermeability-gauge", measure(g_dot, {&bound}));
  return report;
}

ResidualReport conserved_family_residual(const CompressibleState& state, const CompressibleParams& params,
                                         ProjectionKind kind, const GaugeSpec& gauge, const FamilySpec& family,
                                         double t) {
  const Balance b = balance(state, params, kind, gauge, t);
  const ScalarField& rho = state.rho;
  const ScalarField& rho_t = *b.tendency.drho_dt;
  const ScalarField phi = apply_pointwise(rho, &FamilySpec::phi, family);
  const ScalarField dphi = apply_pointwise(rho, &FamilySpec::dphi, family);
  const ScalarField d2phi = apply_pointwise(rho, &FamilySpec::d2phi, family);

  // d/dt(q Phi') = q_t Phi' + q Phi'' rho_t
  const ScalarField density_t = pointwise::mul(b.dq_dt, dphi) + pointwise::mul(b.q, pointwise::mul(d2phi, rho_t));
  const ScalarField div_flux = divergence(scale(b.flux, dphi));

  ResidualReport report;
  report.n = state.u.grid().n();
  report.add("cons", measure(density_t + div_flux, {&density_t, &div_flux}));

  ScalarField density = pointwise::mul(b.q, dphi);
  if (kind == ProjectionKind::log_density) density = pointwise::mul(density, rho);
  const ScalarField div_phi_w = divergence(scale(b.omega, phi));
  report.add("cons-identity", measure(density - div_phi_w, {&density, &div_phi_w}));

  double total = 0.0, absolute = 0.0;
  for (std::size_t i = 0; i < density_t.size(); ++i) {
    total += density_t[i];
    absolute += std::abs(density_t[i]);
  }
  ResidualEntry integral_entry;
  integral_entry.l2_rel = absolute > 0.0 ? std::abs(total) / absolute : std::abs(total);
  integral_entry.linf = std::abs(total) * rho.grid().cell_volume();
  report.add("cons-integral", integral_entry);
  report.provenance.emplace_back("family", family.name());
  return report;
}

MaskedVelocity pseudo_velocity_compressible(const CompressibleState& state, const CompressibleParams& params,
                                            ProjectionKind kind, const GaugeSpec& gauge, double epsilon_rel) {
  check_state(state);
  ScalarField q = projection_q(curl(state.u), state.rho, kind);
  return make_masked_velocity(state.u, current_excess(state, params, kind, gauge), std::move(q), epsilon_rel,
                              gauge.name());
}

ResidualReport compressible_b_residual(const CompressibleState& state, const CompressibleParams& params,
                                       ProjectionKind kind, const GaugeSpec& gauge, double epsilon_rel, double t,
                                       int erosion) {
  check_state(state);
  const Tendency tend = compressible_tendency(state, params, t);
  const ScalarField dq_dt = projection_time_derivative(state, tend, kind);
  const MaskedVelocity vel = pseudo_velocity_compressible(state, params, kind, gauge, epsilon_rel);
  const StretchFoldFields sf = stretch_fold_balance(vel, dq_dt, state.rho, *tend.drho_dt, erosion);
  const Mask* region = &sf.region;

  ResidualReport report;
  report.n = state.u.grid().n();
  report.add("ceeqn1", measure(sf.residual, {&sf.db_dt, &sf.transport, &sf.d_q}, region));
  report.add("eeqn2-div", ratio_entry(sf.div_d_q, sf.grad_d_q_norm, region, region->excluded_fraction()));
  report.add("q1d2-q", measure(sf.continuity_residual, {&dq_dt, &sf.div_flux}, region));
  report.add("q1d2-rho", measure(sf.scalar_residual, {&*tend.drho_dt, &sf.scalar_advection}, region));
  report.provenance.emplace_back("epsilon_rel", format_real(epsilon_rel));
  report.provenance.emplace_back("masked_fraction", format_real(vel.masked_fraction));
  report.provenance.emplace_back("div_Uq_l2", format_real(l2_norm(sf.div_pseudo_velocity, region)));
  report.provenance.emplace_back("Dq_l2", format_real(l2_norm(sf.d_q, region)));
  return report;
}

VectorField bernoulli_baroclinic_term(const CompressibleState& state) {
  check_state(state);
  const ScalarField head = 0.5 * dot(state.u, state.u);
  return pointwise::cross(gradient(reciprocal(state.rho)), gradient(head));
}

ResidualReport compressible_vorticity_residual(const CompressibleState& state, const CompressibleParams& params,
                                               double t) {
  check_state(state);
  const Tendency tend = compressible_tendency(state, params, t);
  const VectorField lhs = curl(tend.du_dt);
  const VectorField omega = curl(state.u);
  const ScalarField rinv = reciprocal(state.rho);
  const VectorField transport = curl(cross(state.u, omega));
  const VectorField viscous = params.mu * pointwise::scale(laplacian(omega), rinv);
  VectorField bracket = params.mu * laplacian(state.u);
  bracket -= gradient(modified_pressure(state, params));
  const VectorField baroclinic = pointwise::cross(gradient(rinv), bracket);

  ResidualReport report;
  report.n = state.u.grid().n();
  report.add("Dom", measure(lhs - transport - viscous - baroclinic, {&lhs, &transport, &viscous, &baroclinic}));
  // Size of the kinetic-head variant's extra term, relative to the same scale.
  const VectorField extra = bernoulli_baroclinic_term(state);
  const double scale_norm = std::max({l2_norm(lhs), l2_norm(transport), l2_norm(viscous), l2_norm(baroclinic)});
  const double variant = scale_norm > 0 ? l2_norm(extra) / scale_norm : 0.0;
  report.provenance.emplace_back("dom_kinetic_head_variant_rel", format_real(variant));
  return report;
}

ResidualReport gauge_invariance_report(const CompressibleState& state, const CompressibleParams& params,
                                       ProjectionKind kind, double epsilon_rel, double t) {
  const Balance b0 = balance(state, params, kind, GaugeSpec{}, t);
  const VectorField grad_rho = gradient(state.rho);
  const ScalarField res0 = b0.dq_dt + b0.div_flux;
  const ScalarField imp0 = pointwise::dot(b0.flux, grad_rho);
  const double div_scale = l2_norm(b0.div_flux);
  const double res_scale = std::max(l2_norm(b0.dq_dt), div_scale);
  const double imp_scale = l2_norm(imp0);
  const VectorField excess0 = current_excess(state, params, kind, GaugeSpec{});
  const MaskedVelocity v0 = make_masked_velocity(state.u, excess0, b0.q, epsilon_rel);
  const Mask region = v0.mask.eroded(2);
  const double u_scale = l2_norm(v0.field, &region);

  double d_div = 0.0, d_res = 0.0, d_imp = 0.0;
  double u_change = std::numeric_limits<double>::infinity();
  for (const GaugeSpec& g : GaugeSpec::catalog()) {
    if (g.trivial()) continue;
    const VectorField flux = b0.flux + g.term(state.rho);
    const ScalarField div_flux = divergence(flux);
    const auto rel = [](double num, double den) { return den > 0.0 ? num / den : num; };
    d_div = std::max(d_div, rel(l2_norm(div_flux - b0.div_flux), div_scale));
    d_res = std::max(d_res, rel(l2_norm((b0.dq_dt + div_flux) - res0), res_scale));
    d_imp = std::max(d_imp, rel(l2_norm(pointwise::dot(flux, grad_rho) - imp0), imp_scale));
    const MaskedVelocity vg = make_masked_velocity(state.u, excess0 + g.term(state.rho), b0.q, epsilon_rel);
    u_change = std::min(u_change, rel(l2_norm(vg.field - v0.field, &region), u_scale));
  }
  ResidualReport report;
  report.n = state.u.grid().n();
  report.add("gauge-invariance-divJ", ResidualEntry{d_div, d_div, 0.0});
  report.add("gauge-invariance-continuity", ResidualEntry{d_res, d_res, 0.0});
  report.add("gauge-invariance-impermeability", ResidualEntry{d_imp, d_imp, 0.0});
  report.provenance.emplace_back("gauge_Uq_min_rel_change", format_real(u_change));
  return report;
}

ResidualReport kind_consistency_report(const CompressibleState& state) {
  check_state(state);
  const VectorField omega = curl(state.u);
  const ScalarField qd = projection_q(omega, state.rho, ProjectionKind::density);
  const ScalarField ql = projection_q(omega, state.rho, ProjectionKind::log_density);
  const ScalarField scaled = pointwise::mul(state.rho, ql);
  ResidualReport report;
  report.n = state.u.grid().n();
  report.add("kind-consistency", measure(qd - scaled, {&qd, &scaled}));
  return report;
}

ResidualReport compressible_suite(const CompressibleState& state, const CompressibleParams& params,
                                  const CompressibleSuiteOptions& o) {
  ResidualReport report;
  report.n = state.u.grid().n();
  const auto take = [&](const ResidualReport& r) {
    report.merge(r);
    for (const auto& p : r.provenance) report.provenance.push_back(p);
  };
  take(compressible_vorticity_residual(state, params, o.t));
  take(quasi_conservation_residuals(state, params, o.kind, o.gauge, o.t));
  take(impermeability_check(state, params, o.kind, o.gauge));
  take(conserved_family_residual(state, params, o.kind, o.gauge, o.family, o.t));
  take(compressible_b_residual(state, params, o.kind, o.gauge, o.epsilon_rel, o.t));
  take(gauge_invariance_report(state, params, o.kind, o.epsilon_rel, o.t));
  take(kind_consistency_report(state));
  return report;
}

}  // namespace ghbf
