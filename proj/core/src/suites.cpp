#include "ghbf/suites.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "ghbf/compressible_diag.hpp"
#include "ghbf/errors.hpp"
#include "ghbf/format.hpp"
#include "ghbf/pv_diagnostics.hpp"
#include "ghbf/spectral_ops.hpp"
#include "ghbf/timestepper.hpp"

namespace ghbf {
namespace {

void take(ResidualReport& into, const ResidualReport& r, const std::string& prefix = "") {
  into.merge(r, prefix);
  for (const auto& p : r.provenance) into.provenance.emplace_back(prefix + p.first, p.second);
}

ResidualReport ideal_suite(const RunConfig& c) {
  BoussinesqParams p = c.boussinesq;
  p.reynolds = std::numeric_limits<double>::infinity();
  const IncompressibleState s = initial_state(c);
  ResidualReport r;
  r.n = c.n;
  take(r, ertel_residual(s, p, euler_tendency(s, p)));
  BandLimitedSpec passive{c.init.seed + 1, c.init.theta_kmax, c.init.theta_amplitude, c.init.theta_envelope};
  take(r, b_ideal_residual(s.u, random_bandlimited(s.u.grid_ptr(), passive), s.theta));
  // folding residuals in the ideal limit: U_q = u and D_q = 0.
  ResidualReport t = theorem1_residuals(s, p, c.epsilon_rel);
  r.add("ens14-ideal", t.at("ens14"));
  const MaskedVelocity v = pseudo_velocity_incompressible(s, p, c.epsilon_rel);
  const VectorField dq = d_q_vector(v.density, v, s.theta);
  const Mask region = v.mask.eroded(2);
  const double u_norm = l2_norm(s.u, &region);
  const VectorField du = zero_outside(v.field - s.u, v.mask);
  r.add("Uq-equals-u", ResidualEntry{l2_norm(du, &region) / u_norm, max_abs(du, &region), region.excluded_fraction()});
  // D_q against the size of its factors' product |grad(q div U)| |grad theta| ~ |grad q| |grad u| |grad theta|
  r.add("Dq-ideal", ResidualEntry{l2_norm(dq, &region) / (l2_norm(gradient(v.density)) * l2_norm(gradient(s.theta)) /
                                                          std::sqrt(s.u.grid().volume())),
                                  max_abs(dq, &region), region.excluded_fraction()});
  r.provenance.emplace_back("seed", std::to_string(c.init.seed));
  return r;
}

ResidualReport boussinesq_suite(const RunConfig& c) {
  const BoussinesqParams& p = c.boussinesq;
  const IncompressibleState s = initial_state(c);
  ResidualReport r;
  r.n = c.n;
  take(r, theorem1_residuals(s, p, c.epsilon_rel));
  take(r, pv_tendency_report(pv_tendency_forms(s, p)));
  r.provenance.emplace_back("seed", std::to_string(c.init.seed));
  return r;
}

ResidualReport compressible(const RunConfig& c, ProjectionKind kind) {
  const CompressibleState s = make_compressible_state(c.make_grid(), c.compressible_init);
  CompressibleSuiteOptions o;
  o.kind = kind;
  o.gauge = c.gauge();
  o.family = c.family_spec();
  o.epsilon_rel = c.epsilon_rel;
  ResidualReport r = compressible_suite(s, c.compressible, o);
  r.n = c.n;
  return r;
}

}  // namespace

bool SuiteResult::all_pass() const {
  for (const auto& row : rows)
    if (!row.pass) return false;
  return true;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"ideal", "boussinesq", "compressible-q1", "compressible-q2"};
  return names;
}

double default_tolerance(const std::string& suite, const std::string& row) {
  if (suite == "ideal") {
    if (row == "B1-forms-agree") return 1e-10;
    if (row == "Dq-ideal") return 1e-10;
    return 1e-8;
  }
  if (suite == "boussinesq") {
    if (row.rfind("ens9", 0) == 0) return row == "ens9-buoyancy" ? 1e-12 : 1e-8;
    if (row == "ens15-div") return 1e-10;
    return 1e-6;
  }
  if (row == "ceeqn1") return 1e-5;
  if (row == "eeqn2-div" || row == "impermeability-gauge" || row == "cons-integral") return 1e-10;
  if (row.rfind("gauge-invariance", 0) == 0 || row == "kind-consistency") return 1e-12;
  if (row == "impermeability") return 1e-8;
  return 1e-6;
}

ResidualReport suite_report(const RunConfig& c, const std::string& suite) {
  c.validate();
  if (suite == "ideal") return ideal_suite(c);
  if (suite == "boussinesq") return boussinesq_suite(c);
  if (suite == "compressible-q1") return compressible(c, ProjectionKind::density);
  if (suite == "compressible-q2") return compressible(c, ProjectionKind::log_density);
  throw ConfigError("unknown suite '" + suite + "' (expected ideal, boussinesq, compressible-q1 or compressible-q2)");
}

SuiteResult grade(const ResidualReport& report, const std::string& suite, std::optional<double> tolerance) {
  SuiteResult out;
  out.suite = suite;
  out.n = report.n;
  out.provenance = report.provenance;
  for (const auto& [name, e] : report.entries()) {
    SuiteRow row{name, e, tolerance ? *tolerance : default_tolerance(suite, name), false};
    row.pass = e.l2_rel <= row.tolerance;
    out.rows.push_back(row);
  }
  return out;
}

SuiteResult run_suite(const RunConfig& config, const std::string& suite, std::optional<double> tolerance) {
  if (!tolerance) tolerance = config.tolerance;
  return grade(suite_report(config, suite), suite, tolerance);
}

std::string format_table(const SuiteResult& r) {
  std::string out = "suite " + r.suite + "  n = " + std::to_string(r.n) + "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %14s %14s %10s %12s  %s\n", "identity", "l2_rel", "linf", "masked",
                "tolerance", "result");
  out += line;
  for (const auto& row : r.rows) {
    std::snprintf(line, sizeof line, "%-32s %14.6e %14.6e %10.6f %12.3e  %s\n", row.name.c_str(), row.entry.l2_rel,
                  row.entry.linf, row.entry.masked_fraction, row.tolerance, row.pass ? "pass" : "FAIL");
    out += line;
  }
  for (const auto& [k, v] : r.provenance) out += "  " + k + " = " + v + "\n";
  out += r.all_pass() ? "all identities pass\n" : "some identities FAIL\n";
  return out;
}

std::string format_csv(const SuiteResult& r) {
  std::string out = "identity,l2_rel,linf,masked_fraction,tolerance,pass\n";
  for (const auto& row : r.rows)
    out += row.name + "," + format_real(row.entry.l2_rel) + "," + format_real(row.entry.linf) + "," +
           format_real(row.entry.masked_fraction) + "," + format_real(row.tolerance) + "," +
           (row.pass ? "true" : "false") + "\n";
  return out;
}

}  // namespace ghbf
