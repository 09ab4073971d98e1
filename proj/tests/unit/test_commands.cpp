#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "ghbf/config.hpp"
#include "ghbf/snapshot.hpp"

using namespace ghbf;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("ghbf_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

// Minimal RFC-4180 reader for unquoted numeric CSV.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

int run(const std::function<int()>& body, std::string* err = nullptr, int masked = cli::config_error) {
  std::ostringstream e;
  const int code = cli::guarded(body, e, masked);
  if (err) *err = e.str();
  return code;
}

const std::string small = "n = 16\nsteps = 6\nsnapshot_stride = 3\nvelocity_kmax = 3\ntheta_kmax = 3\n";

}  // namespace

TEST_SUITE("commands") {

TEST_CASE("simulate writes a reproducible run directory") {
  auto dir = scratch("simulate");
  auto cfg = write_text(dir / "run.cfg", small);
  std::ostringstream log;
  REQUIRE(run([&] { return cli::simulate(cfg.string(), dir / "a", log); }) == cli::ok);
  for (const char* f : {"config.txt", "series.csv", "snapshot_000000.ghbf", "snapshot_000003.ghbf",
                        "snapshot_000006.ghbf"})
    CHECK_MESSAGE(fs::exists(dir / "a" / f), f);

  auto rows = parse_csv(slurp(dir / "a" / "series.csv"));
  REQUIRE(rows.size() == 8u);
  CHECK(rows[0] == std::vector<std::string>{"t", "energy", "int_theta", "int_q", "max_vorticity", "masked_fraction"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].size() == 6u);

  // the emitted config copy reproduces the run byte for byte
  REQUIRE(run([&] { return cli::simulate((dir / "a" / "config.txt").string(), dir / "b", log); }) == cli::ok);
  CHECK(slurp(dir / "a" / "series.csv") == slurp(dir / "b" / "series.csv"));
  CHECK(slurp(dir / "a" / "snapshot_000006.ghbf") == slurp(dir / "b" / "snapshot_000006.ghbf"));
  CHECK(slurp(dir / "a" / "config.txt") == slurp(dir / "b" / "config.txt"));
}

TEST_CASE("zero initial fields give a series of exact zeros") {
  auto dir = scratch("zero");
  std::ostringstream log;
  REQUIRE(run([&] { return cli::simulate(GHBF_CONFIG_DIR "/zero.cfg", dir, log); }) == cli::ok);
  auto rows = parse_csv(slurp(dir / "series.csv"));
  REQUIRE(rows.size() == 12u);
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (std::size_t c = 1; c < rows[i].size(); ++c) CHECK(rows[i][c] == "0");
}

TEST_CASE("simulate exit codes") {
  auto dir = scratch("codes");
  std::ostringstream log;
  std::string err;
  CHECK(run([&] { return cli::simulate(GHBF_CONFIG_DIR "/blowup.cfg", dir / "blow", log); }, &err) ==
        cli::blow_up);
  CHECK(fs::exists(dir / "blow" / "snapshot_000000.ghbf"));
  auto bad = write_text(dir / "bad.cfg", "n = 16\nwind = 3\n");
  CHECK(run([&] { return cli::simulate(bad.string(), dir / "bad", log); }, &err) == cli::config_error);
  CHECK(err.find("wind") != std::string::npos);
  auto comp = write_text(dir / "comp.cfg", "model = compressible\nn = 16\n");
  CHECK(run([&] { return cli::simulate(comp.string(), dir / "comp", log); }) == cli::config_error);
  CHECK_FALSE(fs::exists(dir / "comp" / "series.csv"));
}

TEST_CASE("verify prints the full table and respects the tolerance") {
  auto dir = scratch("verify");
  const std::string cfg = GHBF_CONFIG_DIR "/compressible_q1.cfg";
  std::ostringstream log;
  CHECK(run([&] { return cli::verify(cfg, "compressible-q1", std::nullopt, dir / "out", log); }) == cli::ok);
  auto rows = parse_csv(slurp(dir / "out" / "verify_compressible-q1.csv"));
  REQUIRE(rows.size() > 10u);
  CHECK(rows[0] == std::vector<std::string>{"identity", "l2_rel", "linf", "masked_fraction", "tolerance", "pass"});

  std::ostringstream log0;
  CHECK(run([&] { return cli::verify(cfg, "compressible-q1", 0.0, std::nullopt, log0); }) ==
        cli::verify_failed);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(log0.str().find(rows[i][0]) != std::string::npos);

  CHECK(run([&] { return cli::verify(GHBF_CONFIG_DIR "/nonpositive_density.cfg", "compressible-q2", std::nullopt,
                                     std::nullopt, log); }) == cli::config_error);
  auto flat = write_text(dir / "flat.cfg", "n = 16\ninit_theta = zero\n");
  CHECK(run([&] { return cli::verify(flat.string(), "boussinesq", std::nullopt, std::nullopt, log); }) ==
        cli::config_error);
}

TEST_CASE("surface flux writes rows and maps invalidation") {
  auto dir = scratch("surface");
  auto cfg = write_text(dir / "s.cfg", "model = euler\nn = 16\nbuoyancy = 0\ninit_velocity = abc\n"
                                       "velocity_perturbation = 0.03\nvelocity_kmax = 2\nvelocity_envelope = 0\n"
                                       "theta_kmax = 2\ntheta_envelope = 0\nsurface_m = 8\nsurface_steps = 4\n");
  std::ostringstream log;
  REQUIRE(run([&] { return cli::surface_flux(cfg.string(), dir / "ok", log); }, nullptr,
              cli::surface_invalidated) == cli::ok);
  auto rows = parse_csv(slurp(dir / "ok" / "surface_flux.csv"));
  REQUIRE(rows.size() >= 2u);
  CHECK(rows[0] == std::vector<std::string>{"t", "B_flux", "Dq_flux", "dBflux_dt", "rel_mismatch"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(std::stod(rows[i][2])) <= 1e-10);

  CHECK(run([&] { return cli::surface_flux(GHBF_CONFIG_DIR "/surface_masked.cfg", dir / "masked", log); },
            nullptr, cli::surface_invalidated) == cli::surface_invalidated);
}

TEST_CASE("diagnose derives fields from a snapshot") {
  auto dir = scratch("diagnose");
  auto cfg = write_text(dir / "run.cfg", small);
  std::ostringstream log;
  REQUIRE(run([&] { return cli::simulate(cfg.string(), dir / "run", log); }) == cli::ok);
  const auto snap = dir / "run" / "snapshot_000003.ghbf";
  REQUIRE(run([&] { return cli::diagnose(cfg.string(), snap.string(), dir / "derived", log); }) == cli::ok);
  const Snapshot d = read_snapshot((dir / "derived" / "derived_snapshot_000003.ghbf").string());
  for (const char* f : {"omega", "q", "B", "Uq", "Dq", "divUq", "mask"}) CHECK_NOTHROW_MESSAGE(d.find(f), f);
  CHECK(d.time == read_snapshot(snap.string()).time);

  const std::string bytes = slurp(snap);
  auto cut = write_text(dir / "cut.ghbf", bytes.substr(0, bytes.size() / 2));
  std::string err;
  CHECK(run([&] { return cli::diagnose(cfg.string(), cut.string(), dir / "d2", log); }, &err) == cli::config_error);
  CHECK(err.find("offset") != std::string::npos);
}

}
