#include "ghbf/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ghbf/errors.hpp"
#include "ghbf/pv_diagnostics.hpp"
#include "ghbf/spectral_ops.hpp"

namespace ghbf {
namespace {

IncompressibleState shifted(const IncompressibleState& s, const Tendency& k, double h) {
  IncompressibleState out = s;
  out.u.add_scaled(h, k.du_dt);
  out.theta.add_scaled(h, k.dtheta_dt);
  return out;
}

}  // namespace

IncompressibleState rk4_step(const IncompressibleState& state, const TendencyFn& f, double t, double dt) {
  if (dt == 0.0 || !std::isfinite(dt)) throw PreconditionError("rk4_step: dt must be finite and nonzero");
  const Tendency k1 = f(state, t);
  const Tendency k2 = f(shifted(state, k1, 0.5 * dt), t + 0.5 * dt);
  const Tendency k3 = f(shifted(state, k2, 0.5 * dt), t + 0.5 * dt);
  const Tendency k4 = f(shifted(state, k3, dt), t + dt);

  VectorField du = k1.du_dt;
  du.add_scaled(2.0, k2.du_dt);
  du.add_scaled(2.0, k3.du_dt);
  du += k4.du_dt;
  ScalarField dth = k1.dtheta_dt;
  dth.add_scaled(2.0, k2.dtheta_dt);
  dth.add_scaled(2.0, k3.dtheta_dt);
  dth += k4.dtheta_dt;

  IncompressibleState out = state;
  out.u.add_scaled(dt / 6.0, leray_project(du));
  out.theta.add_scaled(dt / 6.0, dth);
  if (!all_finite(out.u) || !all_finite(out.theta))
    throw BlowUpError("non-finite state after RK4 step ending at t = " + std::to_string(t + dt), t + dt);
  return out;
}

double cfl_dt(const VectorField& u, double factor, const BoussinesqParams& params, double dt_max) {
  if (!(factor > 0.0)) throw PreconditionError("cfl_dt: factor must be > 0");
  const double dx = u.grid().dx();
  double dt = dt_max;
  const double umax = max_abs(u);
  if (umax > 0.0) dt = std::min(dt, factor * dx / umax);
  if (!params.ideal()) {
    const double diffusivity = std::max(params.inverse_reynolds(), params.inverse_peclet());
    dt = std::min(dt, factor * dx * dx / diffusivity);
  }
  return dt;
}

TendencyFn model_tendency(const std::string& model, const BoussinesqParams& params) {
  if (model == "euler")
    return [params](const IncompressibleState& s, double) { return euler_tendency(s, params); };
  if (model == "boussinesq")
    return [params](const IncompressibleState& s, double) { return boussinesq_tendency(s, params); };
  throw ConfigError("model '" + model + "' cannot be time-integrated (expected euler or boussinesq)");
}

SeriesRow series_row(const IncompressibleState& state, const BoussinesqParams& params, double t, double epsilon_rel,
                     bool with_pv) {
  SeriesRow r;
  r.t = t;
  const double dv = state.u.grid().cell_volume();
  double e = 0.0;
  for (int c = 0; c < 3; ++c)
    for (double v : state.u[c].values()) e += v * v;
  r.energy = 0.5 * e * dv;
  r.int_theta = integral(state.theta);
  r.max_vorticity = max_abs(curl(state.u));
  if (with_pv) {
    const ScalarField q = potential_vorticity(absolute_vorticity(state.u, params), state.theta);
    r.int_q = integral(q);
    const double qmax = max_abs(q);
    if (qmax > 0.0) r.masked_fraction = Mask::where_abs_at_least(q, epsilon_rel * qmax).excluded_fraction();
  }
  return r;
}

RunSummary integrate(IncompressibleState initial, const TendencyFn& f, const BoussinesqParams& params, double dt,
                     int steps, int stride, double epsilon_rel, const IntegrateCallbacks& cb, bool with_pv) {
  if (steps < 0) throw PreconditionError("integrate: steps must be >= 0");
  RunSummary out;
  out.dt = dt;
  IncompressibleState state = std::move(initial);
  double t = 0.0;
  int last_snapshot = -1;
  auto snapshot = [&](int step) {
    if (cb.on_snapshot && last_snapshot != step) cb.on_snapshot(step, t, state);
    last_snapshot = step;
  };
  if (cb.on_series) cb.on_series(series_row(state, params, t, epsilon_rel, with_pv));
  if (stride > 0) snapshot(0);
  for (int step = 1; step <= steps; ++step) {
    try {
      state = rk4_step(state, f, t, dt);
    } catch (const BlowUpError&) {
      snapshot(step - 1);
      throw;
    }
    t = step * dt;
    if (cb.on_series) cb.on_series(series_row(state, params, t, epsilon_rel, with_pv));
    if (stride > 0 && (step % stride == 0 || step == steps)) snapshot(step);
  }
  out.steps = steps;
  out.t_final = t;
  out.final_state = std::move(state);
  return out;
}

IncompressibleState initial_state(const RunConfig& config) {
  IncompressibleState s = make_incompressible_state(config.make_grid(), config.init);
  s.u = leray_project(s.u);
  return s;
}

std::pair<double, int> run_schedule(const RunConfig& config, const IncompressibleState& initial) {
  BoussinesqParams params = config.boussinesq;
  if (config.model == "euler") params.reynolds = std::numeric_limits<double>::infinity();
  double dt = config.dt_policy == "fixed" ? config.dt : cfl_dt(initial.u, config.cfl, params, config.dt_max);
  int steps = config.steps;
  if (config.t_end > 0.0) {
    steps = std::max(1, static_cast<int>(std::ceil(config.t_end / dt - 1e-9)));
    dt = config.t_end / steps;
  }
  return {dt, steps};
}

RunSummary integrate(const RunConfig& config, const IntegrateCallbacks& callbacks) {
  config.validate();
  BoussinesqParams params = config.boussinesq;
  if (config.model == "euler") params.reynolds = std::numeric_limits<double>::infinity();
  IncompressibleState s = initial_state(config);
  const auto [dt, steps] = run_schedule(config, s);
  return integrate(std::move(s), model_tendency(config.model, params), params, dt, steps, config.snapshot_stride,
                   config.epsilon_rel, callbacks, config.series_pv);
}

}  // namespace ghbf
