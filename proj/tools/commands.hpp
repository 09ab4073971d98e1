#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "ghbf/markers.hpp"
#include "ghbf/timestepper.hpp"

namespace ghbf::cli {

enum ExitCode : int { ok = 0, verify_failed = 1, config_error = 2, blow_up = 3, surface_invalidated = 4 };

// t,energy,int_theta,int_q,max_vorticity,masked_fraction
std::string series_header();
std::string series_line(const SeriesRow& row);
// t,B_flux,Dq_flux,dBflux_dt,rel_mismatch
std::string surface_header();
std::string surface_line(const SurfaceFluxRow& row);

std::string snapshot_name(int step);

int simulate(const std::string& config_path, const std::filesystem::path& out, std::ostream& log);
int verify(const std::string& config_path, const std::string& suite, std::optional<double> tolerance,
           const std::optional<std::filesystem::path>& out, std::ostream& log);
int surface_flux(const std::string& config_path, const std::filesystem::path& out, std::ostream& log);
// Derived fields omega, q, B, Uq, Dq, divUq and mask from a snapshot holding u and theta.
int diagnose(const std::string& config_path, const std::string& snapshot_path, const std::filesystem::path& out,
             std::ostream& log);

// Runs `body`, translating library errors into exit codes and a one-line
// message on `err`. `masked_code` is the code for WholeFieldMaskedError.
int guarded(const std::function<int()>& body, std::ostream& err, int masked_code = config_error);

}  // namespace ghbf::cli
