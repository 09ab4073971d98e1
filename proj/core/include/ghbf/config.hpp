#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ghbf/compressible_diag.hpp"
#include "ghbf/flow_models.hpp"
#include "ghbf/manufactured.hpp"

namespace ghbf {

// Everything a CLI run needs. Parsed from a flat `key = value` file; see
// config_keys() for the documented key set and defaults.
struct RunConfig {
  int n = 32;
  double box_length = 6.283185307179586;
  double dealias_fraction = 2.0 / 3.0;
  std::string model = "boussinesq";  // euler | boussinesq | compressible
  BoussinesqParams boussinesq = stock_boussinesq_params();

  std::string dt_policy = "cfl";  // fixed | cfl
  double dt = 0.01;
  double cfl = 0.25;
  double dt_max = 0.1;
  int steps = 200;
  double t_end = 0.0;  // > 0 replaces `steps`
  int snapshot_stride = 50;
  bool series_pv = true;

  IncompressibleSpec init;
  CompressibleSpec compressible_init;
  CompressibleParams compressible = stock_compressible_params();
  std::string gauge_phi = "zero";
  std::string gauge_psi = "identity";
  std::string family = "square_half";

  double epsilon_rel = 1e-6;
  std::optional<double> tolerance;  // overrides every per-row tolerance

  std::string surface_seed = "plane";  // plane | sphere
  std::string surface_center = "auto";  // auto (rejection sampling) or "x,y,z"
  int surface_axis = -1;                // -1: pick the axis with the largest |B| flux
  int surface_m = 32;
  double surface_size = 0.5;  // patch edge or sphere radius
  double surface_seed_margin = 0.1;
  int surface_steps = 20;
  std::uint64_t surface_rng_seed = 1;

  void validate() const;
  GridPtr make_grid() const;
  GaugeSpec gauge() const { return GaugeSpec::parse(gauge_phi, gauge_psi); }
  FamilySpec family_spec() const { return FamilySpec::parse(family); }
};

struct ConfigKey {
  std::string name;
  std::string default_value;
  std::string description;
};
const std::vector<ConfigKey>& config_keys();

// Throws ConfigError naming the offending key or line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
// Every key, one per line, in documented order; parse_config(to_text(c)) == c.
std::string to_text(const RunConfig& config);

}  // namespace ghbf
