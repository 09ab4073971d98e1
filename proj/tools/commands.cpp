#include "commands.hpp"

#include <cstdio>
#include <limits>
#include <fstream>
#include <initializer_list>
#include <ostream>

#include "ghbf/errors.hpp"
#include "ghbf/format.hpp"
#include "ghbf/pv_diagnostics.hpp"
#include "ghbf/snapshot.hpp"
#include "ghbf/spectral_ops.hpp"
#include "ghbf/stretch_fold.hpp"
#include "ghbf/suites.hpp"

namespace ghbf::cli {
namespace fs = std::filesystem;
namespace {

std::string csv_row(std::initializer_list<double> values) {
  std::string line;
  for (double v : values) line += (line.empty() ? "" : ",") + format_real(v);
  return line + "\n";
}

fs::path prepare(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw ConfigError("cannot create output directory '" + out.string() + "'");
  return out;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream f(p, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
  return f;
}

void write_text(const fs::path& p, const std::string& text) {
  auto f = open_out(p);
  f << text;
  if (!f) throw ConfigError("failed writing '" + p.string() + "'");
}

Snapshot state_snapshot(const IncompressibleState& s, double t) {
  Snapshot snap;
  snap.time = t;
  snap.add("u", s.u);
  snap.add("theta", s.theta);
  return snap;
}

}  // namespace

std::string series_header() { return "t,energy,int_theta,int_q,max_vorticity,masked_fraction\n"; }

std::string series_line(const SeriesRow& r) {
  return csv_row({r.t, r.energy, r.int_theta, r.int_q, r.max_vorticity, r.masked_fraction});
}

std::string surface_header() { return "t,B_flux,Dq_flux,dBflux_dt,rel_mismatch\n"; }

std::string surface_line(const SurfaceFluxRow& r) {
  return csv_row({r.t, r.b_flux, r.dq_flux, r.dbflux_dt, r.rel_mismatch});
}

std::string snapshot_name(int step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snapshot_%06d.ghbf", step);
  return buf;
}

int simulate(const std::string& config_path, const fs::path& out, std::ostream& log) {
  const RunConfig config = load_config(config_path);
  config.validate();
  model_tendency(config.model, config.boussinesq);  // rejects compressible before anything is written
  prepare(out);
  write_text(out / "config.txt", to_text(config));

  auto series = open_out(out / "series.csv");
  series << series_header();
  IntegrateCallbacks cb;
  cb.on_series = [&](const SeriesRow& r) { series << series_line(r) << std::flush; };
  cb.on_snapshot = [&](int step, double t, const IncompressibleState& s) {
    write_snapshot((out / snapshot_name(step)).string(), state_snapshot(s, t));
  };
  const RunSummary summary = integrate(config, cb);
  log << "simulate: " << summary.steps << " steps, dt = " << format_real(summary.dt)
      << ", t = " << format_real(summary.t_final) << " -> " << out.string() << "\n";
  return ok;
}

int verify(const std::string& config_path, const std::string& suite, std::optional<double> tolerance,
           const std::optional<fs::path>& out, std::ostream& log) {
  const RunConfig config = load_config(config_path);
  const SuiteResult result = run_suite(config, suite, tolerance);
  log << format_table(result);
  if (out) {
    prepare(*out);
    write_text(*out / "config.txt", to_text(config));
    write_text(*out / ("verify_" + suite + ".csv"), format_csv(result));
  }
  return result.all_pass() ? ok : verify_failed;
}

int surface_flux(const std::string& config_path, const fs::path& out, std::ostream& log) {
  const RunConfig config = load_config(config_path);
  config.validate();
  prepare(out);
  write_text(out / "config.txt", to_text(config));
  auto csv = open_out(out / "surface_flux.csv");
  csv << surface_header() << std::flush;
  const SurfaceFluxReport report =
      surface_flux_check(config, [&](const SurfaceFluxRow& r) { csv << surface_line(r) << std::flush; });
  log << "surface-flux: " << report.rows.size() << " rows, dt = " << format_real(report.dt) << "\n"
      << "  seed center = (" << format_real(report.seed.center[0]) << ", " << format_real(report.seed.center[1]) << ", "
      << format_real(report.seed.center[2]) << "), axis = " << report.seed.axis << "\n"
      << "  B_flux(0) = " << format_real(report.b_flux_initial) << "\n"
      << "  max |B_flux(t) - B_flux(0)| / |B_flux(0)| = " << format_real(report.max_b_flux_change) << "\n"
      << "  max |Dq_flux| = " << format_real(report.max_abs_dq_flux) << "\n"
      << "  final rel_mismatch = " << format_real(report.final_mismatch) << "\n";
  return ok;
}

int diagnose(const std::string& config_path, const std::string& snapshot_path, const fs::path& out,
             std::ostream& log) {
  const RunConfig config = load_config(config_path);
  config.validate();
  const Snapshot in = read_snapshot(snapshot_path, config.make_grid());
  IncompressibleState s{in.vector("u"), in.scalar("theta")};
  BoussinesqParams params = config.boussinesq;
  if (config.model == "euler") params.reynolds = std::numeric_limits<double>::infinity();

  const VectorField w = absolute_vorticity(s.u, params);
  const ScalarField q = potential_vorticity(w, s.theta);
  const MaskedVelocity v = pseudo_velocity_incompressible(s, params, config.epsilon_rel);
  const Tendency t = boussinesq_tendency(s, params);
  const StretchFoldFields sf = stretch_fold_balance(v, pv_time_derivative(s, params, t), s.theta, t.dtheta_dt);
  ScalarField mask(q.grid_ptr());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = v.mask[i] ? 1.0 : 0.0;

  Snapshot d;
  d.time = in.time;
  d.add("omega", curl(s.u));
  d.add("q", q);
  d.add("B", sf.b);
  d.add("Uq", v.field);
  d.add("Dq", sf.d_q);
  d.add("divUq", sf.div_pseudo_velocity);
  d.add("mask", mask);
  prepare(out);
  const fs::path target = out / ("derived_" + fs::path(snapshot_path).filename().string());
  write_snapshot(target.string(), d);
  log << "diagnose: t = " << format_real(in.time) << ", masked_fraction = " << format_real(v.masked_fraction) << " -> "
      << target.string() << "\n";
  return ok;
}

int guarded(const std::function<int()>& body, std::ostream& err, int masked_code) {
  try {
    return body();
  } catch (const SnapshotTruncatedError& e) {
    err << "error: " << e.what() << " (byte offset " << e.offset() << ")\n";
    return config_error;
  } catch (const BlowUpError& e) {
    err << "blow-up: " << e.what() << "\n";
    return blow_up;
  } catch (const SurfaceInvalidatedError& e) {
    err << "surface invalidated: " << e.what() << "\n";
    return surface_invalidated;
  } catch (const WholeFieldMaskedError& e) {
    err << "masked: " << e.what() << "\n";
    return masked_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return config_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return config_error;
  }
}

}  // namespace ghbf::cli
