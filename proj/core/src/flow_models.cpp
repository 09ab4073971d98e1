#include "ghbf/flow_models.hpp"

#include <cmath>

#include "ghbf/errors.hpp"
#include "ghbf/spectral_ops.hpp"

namespace ghbf {
namespace {

VectorField coriolis(const std::array<double, 3>& omega, const VectorField& u) {
  // 2 Omega x u; linear in u, no dealiasing needed.
  VectorField out(u.grid_ptr());
  for (std::size_t i = 0; i < u.size(); ++i) {
    out[0][i] = 2.0 * (omega[1] * u[2][i] - omega[2] * u[1][i]);
    out[1][i] = 2.0 * (omega[2] * u[0][i] - omega[0] * u[2][i]);
    out[2][i] = 2.0 * (omega[0] * u[1][i] - omega[1] * u[0][i]);
  }
  return out;
}

// Unprojected momentum forcing N with du/dt = P(N).
VectorField momentum_forcing(const IncompressibleState& s, const BoussinesqParams& p, bool viscous) {
  require_same_grid(s.u.grid(), s.theta.grid());
  VectorField omega = curl(s.u);
  VectorField n = cross(s.u, omega);
  n -= coriolis(p.rotation, s.u);
  n[2].add_scaled(-p.buoyancy, s.theta);
  if (viscous && !p.ideal()) n.add_scaled(p.inverse_reynolds(), laplacian(s.u));
  return n;
}

}  // namespace

void BoussinesqParams::validate() const {
  if (!(reynolds > 0.0)) throw ConfigError("reynolds must be > 0");
  if (!(prandtl > 0.0) || !std::isfinite(prandtl)) throw ConfigError("prandtl must be > 0");
  if (!std::isfinite(buoyancy)) throw ConfigError("buoyancy must be finite");
  for (double w : rotation)
    if (!std::isfinite(w)) throw ConfigError("rotation must be finite");
}

void CompressibleParams::validate() const {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw ConfigError("mu must be >= 0");
  if (!(mu_v >= 0.0) || !std::isfinite(mu_v)) throw ConfigError("mu_v must be >= 0");
  if (!(gas_constant > 0.0)) throw ConfigError("gas_constant must be > 0");
  if (!(cv > 0.0)) throw ConfigError("cv must be > 0");
  if (!(heating.pulse_width > 0.0)) throw ConfigError("heating_pulse_width must be > 0");
}

HeatingSpec::Kind HeatingSpec::parse_kind(const std::string& name) {
  if (name == "zero") return Kind::zero;
  if (name == "mode") return Kind::mode;
  if (name == "pulse") return Kind::pulse;
  throw ConfigError("unknown heating kind '" + name + "' (expected zero, mode or pulse)");
}

std::string HeatingSpec::kind_name(Kind k) {
  switch (k) {
    case Kind::zero: return "zero";
    case Kind::mode: return "mode";
    case Kind::pulse: return "pulse";
  }
  return "zero";
}

ScalarField HeatingSpec::evaluate(const GridPtr& grid, double t) const {
  if (kind == Kind::zero) return ScalarField(grid);
  double amp = amplitude;
  if (kind == Kind::pulse) {
    double s = (t - pulse_center) / pulse_width;
    amp *= std::exp(-0.5 * s * s);
  }
  const double k0 = grid->base_wavenumber();
  return ScalarField::from_function(grid, [&](double x, double y, double z) {
    return amp * std::sin(k0 * (wave[0] * x + wave[1] * y + wave[2] * z));
  });
}

void require_solenoidal(const VectorField& u, double tol) {
  double d = l2_norm(divergence(u));
  auto grad = velocity_gradient(u);
  double g2 = 0.0;
  for (const auto& row : grad)
    for (const auto& c : row) {
      double v = l2_norm(c);
      g2 += v * v;
    }
  if (d > tol * std::sqrt(g2))
    throw PreconditionError("velocity is not solenoidal: ||div u|| / ||grad u|| = " +
                            std::to_string(d / std::sqrt(g2)));
}

Tendency euler_tendency(const IncompressibleState& state, const BoussinesqParams& params) {
  BoussinesqParams ideal = params;
  ideal.reynolds = std::numeric_limits<double>::infinity();
  return boussinesq_tendency(state, ideal);
}

Tendency boussinesq_tendency(const IncompressibleState& state, const BoussinesqParams& params) {
  params.validate();
  require_solenoidal(state.u);
  Tendency t;
  t.du_dt = leray_project(momentum_forcing(state, params, true));
  t.dtheta_dt = -advect(state.u, state.theta);
  if (!params.ideal()) t.dtheta_dt.add_scaled(params.inverse_peclet(), laplacian(state.theta));
  return t;
}

ScalarField recover_pressure(const IncompressibleState& state, const BoussinesqParams& params) {
  ScalarField head;
  leray_project(momentum_forcing(state, params, true), &head);
  // du/dt = u x w - grad(p + |u|^2/2) - ...; the projection removed grad(head).
  ScalarField p = head - 0.5 * multiply(state.u[0], state.u[0]);
  p -= 0.5 * multiply(state.u[1], state.u[1]);
  p -= 0.5 * multiply(state.u[2], state.u[2]);
  p += -mean(p);
  return p;
}

ScalarField modified_pressure(const CompressibleState& state, const CompressibleParams& params) {
  ScalarField p = params.gas_constant * multiply(state.rho, state.theta);
  p.add_scaled(-(params.mu / 3.0 + params.mu_v), divergence(state.u));
  return p;
}

Tendency compressible_tendency(const CompressibleState& state, const CompressibleParams& params, double t) {
  params.validate();
  require_same_grid(state.u.grid(), state.rho.grid());
  require_same_grid(state.u.grid(), state.theta.grid());
  require_positive(state.rho, "compressible_tendency: density");

  const ScalarField rinv = reciprocal(state.rho);
  const ScalarField div_u = divergence(state.u);

  VectorField force = params.mu * laplacian(state.u);
  force -= gradient(modified_pressure(state, params));

  Tendency out;
  out.du_dt = scale(force, rinv) - advect(state.u, state.u);
  out.drho_dt = -divergence(scale(state.u, state.rho));
  // (p / rho) div u with p = R rho theta is R theta div u.
  ScalarField heat = params.gas_constant * multiply(state.theta, div_u);
  heat += params.heating.evaluate(state.u.grid_ptr(), t);
  out.dtheta_dt = (1.0 / params.cv) * heat - advect(state.u, state.theta);
  return out;
}

VectorField vorticity_tendency(const Tendency& tendency) { return curl(tendency.du_dt); }

VectorField incompressible_vorticity_rhs(const IncompressibleState& state, const BoussinesqParams& params) {
  VectorField omega = curl(state.u);
  VectorField rhs = curl(cross(state.u, omega));
  const auto& w = params.rotation;
  if (w[0] != 0.0 || w[1] != 0.0 || w[2] != 0.0) {
    // curl(-2 Omega x u) = 2 (Omega . grad) u for solenoidal u and constant Omega
    for (int i = 0; i < 3; ++i) {
      VectorField g = gradient(state.u[i]);
      for (int j = 0; j < 3; ++j) rhs[i].add_scaled(2.0 * w[j], g[j]);
    }
  }
  rhs.add_scaled(-params.buoyancy, perp_gradient(state.theta));
  if (!params.ideal()) rhs.add_scaled(params.inverse_reynolds(), laplacian(omega));
  return rhs;
}

VectorField compressible_vorticity_rhs(const CompressibleState& state, const CompressibleParams& params) {
  require_positive(state.rho, "compressible_vorticity_rhs: density");
  const ScalarField rinv = reciprocal(state.rho);
  VectorField omega = curl(state.u);
  VectorField rhs = curl(cross(state.u, omega));
  rhs += params.mu * scale(laplacian(omega), rinv);
  VectorField bracket = params.mu * laplacian(state.u);
  bracket -= gradient(modified_pressure(state, params));
  rhs += cross(gradient(rinv), bracket);
  return rhs;
}

}  // namespace ghbf
