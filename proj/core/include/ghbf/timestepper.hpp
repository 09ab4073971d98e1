#pragma once

#include <functional>

#include "ghbf/config.hpp"
#include "ghbf/flow_models.hpp"

namespace ghbf {

using TendencyFn = std::function<Tendency(const IncompressibleState&, double t)>;

// Classical RK4; a negative dt integrates backward. The velocity increment is
// Leray-projected, so a zero tendency leaves the state bit-identical. Throws
// BlowUpError (stamped t + dt) on a non-finite result.
IncompressibleState rk4_step(const IncompressibleState& state, const TendencyFn& f, double t, double dt);

// factor dx / max|u|, reduced to the viscous limit factor dx^2 min(Re, sigma Re)
// when Re is finite, and capped by dt_max.
double cfl_dt(const VectorField& u, double factor, const BoussinesqParams& params, double dt_max);

TendencyFn model_tendency(const std::string& model, const BoussinesqParams& params);

struct SeriesRow {
  double t = 0.0;
  double energy = 0.0;       // 1/2 int |u|^2 dV
  double int_theta = 0.0;
  double int_q = 0.0;        // q = (omega + 2 Omega) . grad theta
  double max_vorticity = 0.0;
  double masked_fraction = 0.0;  // 0 when q vanishes identically
};

SeriesRow series_row(const IncompressibleState& state, const BoussinesqParams& params, double t, double epsilon_rel,
                     bool with_pv = true);

struct IntegrateCallbacks {
  std::function<void(const SeriesRow&)> on_series;
  // step index, time, state
  std::function<void(int, double, const IncompressibleState&)> on_snapshot;
};

struct RunSummary {
  int steps = 0;
  double dt = 0.0;
  double t_final = 0.0;
  IncompressibleState final_state;
};

// Fixed-step integration: series every step (including t = 0), snapshots at
// step 0, every `stride` steps and the last step. On blow-up the last good
// state is passed to on_snapshot before the error propagates.
RunSummary integrate(IncompressibleState initial, const TendencyFn& f, const BoussinesqParams& params, double dt,
                     int steps, int stride, double epsilon_rel, const IntegrateCallbacks& callbacks,
                     bool with_pv = true);

// dt and step count a config implies for a given initial state.
std::pair<double, int> run_schedule(const RunConfig& config, const IncompressibleState& initial);

// Builds the initial state (projected), schedule and tendency from a config.
RunSummary integrate(const RunConfig& config, const IntegrateCallbacks& callbacks);

IncompressibleState initial_state(const RunConfig& config);

}  // namespace ghbf
