#pragma once

#include <string>
#include <optional>
#include <utility>
#include <vector>

#include "ghbf/config.hpp"
#include "ghbf/residual.hpp"

namespace ghbf {

struct SuiteRow {
  std::string name;
  ResidualEntry entry;
  double tolerance = 0.0;
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  int n = 0;
  std::vector<SuiteRow> rows;
  std::vector<std::pair<std::string, std::string>> provenance;
  bool all_pass() const;
};

// ideal | boussinesq | compressible-q1 | compressible-q2
const std::vector<std::string>& suite_names();

// Default pass threshold on l2_rel for a row of a suite.
double default_tolerance(const std::string& suite, const std::string& row);

ResidualReport suite_report(const RunConfig& config, const std::string& suite);
// `tolerance` (when set) overrides every row; otherwise config.tolerance, then the defaults.
SuiteResult run_suite(const RunConfig& config, const std::string& suite, std::optional<double> tolerance = {});
SuiteResult grade(const ResidualReport& report, const std::string& suite, std::optional<double> tolerance = {});

std::string format_table(const SuiteResult& result);
// RFC-4180 CSV: identity,l2_rel,linf,masked_fraction,tolerance,pass
std::string format_csv(const SuiteResult& result);

}  // namespace ghbf
