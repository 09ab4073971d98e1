#include "ghbf/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <type_traits>

#include "ghbf/errors.hpp"
#include "ghbf/format.hpp"
#include "ghbf/grid.hpp"

namespace ghbf {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const char* expected) {
  throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as " + expected);
}

double to_double(const std::string& key, const std::string& v) {
  if (v == "inf" || v == "+inf" || v == "infinity") return std::numeric_limits<double>::infinity();
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad(key, v, "a real number");
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  long long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad(key, v, "an integer");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad(key, v, "an unsigned integer");
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad(key, v, "a boolean");
}

struct Entry {
  ConfigKey doc;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define GHBF_REAL(key, member, desc)                                                                         \
  Entry {                                                                                                    \
    {key, "", desc}, [](RunConfig& c, const std::string& k, const std::string& v) { c.member = to_double(k, v); }, \
        [](const RunConfig& c) { return format_real(c.member); }                                                    \
  }
#define GHBF_INT(key, member, desc)                                                                               \
  Entry {                                                                                                         \
    {key, "", desc},                                                                                              \
        [](RunConfig& c, const std::string& k, const std::string& v) {                                            \
          c.member = static_cast<std::remove_cvref_t<decltype(c.member)>>(to_int(k, v));                                               \
        },                                                                                                        \
        [](const RunConfig& c) { return std::to_string(c.member); }                                               \
  }
#define GHBF_TEXT(key, member, desc)                                                                      \
  Entry {                                                                                                 \
    {key, "", desc}, [](RunConfig& c, const std::string&, const std::string& v) { c.member = v; },       \
        [](const RunConfig& c) { return c.member; }                                                       \
  }

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t = {
        GHBF_INT("n", n, "grid points per axis (power of two, >= 8)"),
        GHBF_REAL("box_length", box_length, "periodic box edge"),
        GHBF_REAL("dealias_fraction", dealias_fraction, "fraction of n/2 kept by the dealias mask"),
        GHBF_TEXT("model", model, "euler | boussinesq | compressible"),
        GHBF_REAL("reynolds", boussinesq.reynolds, "Reynolds number (inf for ideal flow)"),
        GHBF_REAL("prandtl", boussinesq.prandtl, "Prandtl number sigma"),
        GHBF_REAL("buoyancy", boussinesq.buoyancy, "buoyancy coefficient a0"),
        GHBF_REAL("rotation_x", boussinesq.rotation[0], "rotation vector Omega, x component"),
        GHBF_REAL("rotation_y", boussinesq.rotation[1], "rotation vector Omega, y component"),
        GHBF_REAL("rotation_z", boussinesq.rotation[2], "rotation vector Omega, z component"),
        GHBF_TEXT("dt_policy", dt_policy, "fixed | cfl (dt frozen from the initial state)"),
        GHBF_REAL("dt", dt, "time step for dt_policy = fixed"),
        GHBF_REAL("cfl", cfl, "CFL factor in (0, 0.5]"),
        GHBF_REAL("dt_max", dt_max, "upper bound on the CFL step"),
        GHBF_INT("steps", steps, "number of RK4 steps"),
        GHBF_REAL("t_end", t_end, "end time; when > 0 the step count is derived from it"),
        GHBF_INT("snapshot_stride", snapshot_stride, "steps between snapshots (0 disables)"),
        Entry{{"series_pv", "", "compute int_q and masked_fraction in series.csv"},
              [](RunConfig& c, const std::string& k, const std::string& v) { c.series_pv = to_bool(k, v); },
              [](const RunConfig& c) { return std::string(c.series_pv ? "true" : "false"); }},
        Entry{{"seed", "", "seed of the random initial fields"},
              [](RunConfig& c, const std::string& k, const std::string& v) { c.init.seed = to_u64(k, v); },
              [](const RunConfig& c) { return std::to_string(c.init.seed); }},
        GHBF_TEXT("init_velocity", init.velocity, "random | abc | shear | zero"),
        GHBF_TEXT("init_theta", init.theta, "random | cos_z | zero"),
        GHBF_REAL("velocity_kmax", init.velocity_kmax, "largest |k| of the random velocity"),
        GHBF_REAL("velocity_amplitude", init.velocity_amplitude, "RMS speed (or ABC / shear scale)"),
        GHBF_REAL("velocity_envelope", init.velocity_envelope, "Gaussian spectral envelope width (0: flat)"),
        GHBF_REAL("theta_kmax", init.theta_kmax, "largest |k| of the random theta"),
        GHBF_REAL("theta_amplitude", init.theta_amplitude, "RMS of theta"),
        GHBF_REAL("theta_envelope", init.theta_envelope, "Gaussian spectral envelope width (0: flat)"),
        GHBF_REAL("abc_a", init.abc_a, "ABC coefficient A"),
        GHBF_REAL("abc_b", init.abc_b, "ABC coefficient B"),
        GHBF_REAL("abc_c", init.abc_c, "ABC coefficient C"),
        GHBF_REAL("velocity_perturbation", init.velocity_perturbation,
                  "abc only: RMS of an added random solenoidal field, relative to velocity_amplitude"),
        GHBF_REAL("rho_mean", compressible_init.rho_mean, "compressible state: mean density"),
        GHBF_REAL("rho_amplitude", compressible_init.rho_amplitude, "density modulation sin x sin y"),
        GHBF_REAL("compressible_velocity_amplitude", compressible_init.velocity_amplitude, "ABC scale"),
        GHBF_REAL("compressive_amplitude", compressible_init.compressive_amplitude,
                  "scale of the (sin x, sin y, sin z) part"),
        GHBF_REAL("temperature_mean", compressible_init.temperature_mean, "mean temperature"),
        GHBF_REAL("temperature_amplitude", compressible_init.temperature_amplitude, "cos(k z) amplitude"),
        GHBF_INT("temperature_wave", compressible_init.temperature_wave, "k of the temperature mode"),
        GHBF_REAL("mu", compressible.mu, "shear viscosity"),
        GHBF_REAL("mu_v", compressible.mu_v, "volume viscosity"),
        GHBF_REAL("gas_constant", compressible.gas_constant, "R in p = R rho theta"),
        GHBF_REAL("cv", compressible.cv, "specific heat at constant volume"),
        Entry{{"heating", "", "zero | mode | pulse"},
              [](RunConfig& c, const std::string&, const std::string& v) {
                c.compressible.heating.kind = HeatingSpec::parse_kind(v);
              },
              [](const RunConfig& c) { return HeatingSpec::kind_name(c.compressible.heating.kind); }},
        GHBF_REAL("heating_amplitude", compressible.heating.amplitude, "heating amplitude"),
        GHBF_INT("heating_kx", compressible.heating.wave[0], "heating mode vector, x"),
        GHBF_INT("heating_ky", compressible.heating.wave[1], "heating mode vector, y"),
        GHBF_INT("heating_kz", compressible.heating.wave[2], "heating mode vector, z"),
        GHBF_REAL("heating_pulse_center", compressible.heating.pulse_center, "pulse centre time"),
        GHBF_REAL("heating_pulse_width", compressible.heating.pulse_width, "pulse width"),
        GHBF_TEXT("gauge_phi", gauge_phi, "zero | sin_x | cos_yz"),
        GHBF_TEXT("gauge_psi", gauge_psi, "identity | square | log"),
        GHBF_TEXT("family", family, "identity | square_half | log | exp_clipped"),
        GHBF_REAL("epsilon_rel", epsilon_rel, "mask threshold |q| >= epsilon_rel max|q|"),
        Entry{{"tolerance", "", "overrides every per-row tolerance (default: per-row)"},
              [](RunConfig& c, const std::string& k, const std::string& v) {
                if (v == "default") c.tolerance.reset();
                else c.tolerance = to_double(k, v);
              },
              [](const RunConfig& c) { return c.tolerance ? format_real(*c.tolerance) : std::string("default"); }},
        GHBF_TEXT("surface_seed", surface_seed, "plane | sphere"),
        GHBF_TEXT("surface_center", surface_center, "auto or x,y,z"),
        GHBF_INT("surface_axis", surface_axis, "plane normal axis 0..2 (-1: largest B flux)"),
        GHBF_INT("surface_m", surface_m, "markers per side (>= 8)"),
        GHBF_REAL("surface_size", surface_size, "plane edge length or sphere radius"),
        GHBF_REAL("surface_seed_margin", surface_seed_margin, "seed only where |q| >= margin max|q|"),
        GHBF_INT("surface_steps", surface_steps, "RK4 steps in the flux window"),
        Entry{{"surface_rng_seed", "", "seed of the surface rejection sampler"},
              [](RunConfig& c, const std::string& k, const std::string& v) { c.surface_rng_seed = to_u64(k, v); },
              [](const RunConfig& c) { return std::to_string(c.surface_rng_seed); }},
    };
    const RunConfig defaults;
    for (auto& e : t) e.doc.default_value = e.get(defaults);
    return t;
  }();
  return table;
}

#undef GHBF_REAL
#undef GHBF_INT
#undef GHBF_TEXT

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> out;
    for (const auto& e : entries()) out.push_back(e.doc);
    return out;
  }();
  return keys;
}

void RunConfig::validate() const {
  if (n < 8 || (n & (n - 1)) != 0)
    throw ConfigError("config key 'n': must be a power of two >= 8, got " + std::to_string(n));
  if (model != "euler" && model != "boussinesq" && model != "compressible")
    throw ConfigError("config key 'model': expected euler, boussinesq or compressible, got '" + model + "'");
  if (dt_policy != "fixed" && dt_policy != "cfl")
    throw ConfigError("config key 'dt_policy': expected fixed or cfl, got '" + dt_policy + "'");
  if (!(cfl > 0.0 && cfl <= 0.5)) throw ConfigError("config key 'cfl': must lie in (0, 0.5]");
  if (dt_policy == "fixed" && !(dt > 0.0 && std::isfinite(dt))) throw ConfigError("config key 'dt': must be > 0");
  if (!(dt_max > 0.0)) throw ConfigError("config key 'dt_max': must be > 0");
  if (t_end < 0.0 || !std::isfinite(t_end)) throw ConfigError("config key 't_end': must be > 0 when given");
  if (t_end == 0.0 && steps < 1) throw ConfigError("config key 'steps': must be >= 1");
  if (snapshot_stride < 0) throw ConfigError("config key 'snapshot_stride': must be >= 0");
  if (!(epsilon_rel > 0.0)) throw ConfigError("config key 'epsilon_rel': must be > 0");
  if (tolerance && !(*tolerance >= 0.0)) throw ConfigError("config key 'tolerance': must be >= 0");
  if (surface_seed != "plane" && surface_seed != "sphere")
    throw ConfigError("config key 'surface_seed': expected plane or sphere");
  if (surface_m < 8) throw ConfigError("config key 'surface_m': must be >= 8");
  if (surface_axis < -1 || surface_axis > 2) throw ConfigError("config key 'surface_axis': must be -1, 0, 1 or 2");
  if (!(surface_size > 0.0)) throw ConfigError("config key 'surface_size': must be > 0");
  if (surface_steps < 2) throw ConfigError("config key 'surface_steps': must be >= 2");
  try {
    boussinesq.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  compressible.validate();
  (void)gauge();
  (void)family_spec();
}

GridPtr RunConfig::make_grid() const { return Grid::create(n, box_length, dealias_fraction); }

RunConfig parse_config(const std::string& text) {
  std::map<std::string, const Entry*> lookup;
  for (const auto& e : entries()) lookup[e.doc.name] = &e;

  RunConfig c;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto it = lookup.find(key);
    if (it == lookup.end()) throw ConfigError("config key '" + key + "': unknown key (line " + std::to_string(lineno) + ")");
    if (seen.count(key)) throw ConfigError("config key '" + key + "': given twice");
    seen[key] = lineno;
    if (value.empty()) throw ConfigError("config key '" + key + "': empty value");
    it->second->set(c, key, value);
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string to_text(const RunConfig& c) {
  std::string out;
  for (const auto& e : entries()) out += e.doc.name + " = " + e.get(c) + "\n";
  return out;
}

}  // namespace ghbf
