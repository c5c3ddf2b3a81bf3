#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "descent/clifford.hpp"
#include "descent/diagnostics.hpp"
#include "descent/initial_data.hpp"

namespace descent {

// Configuration problems (bad grammar, unknown keys, invalid values) are
// distinct from tolerance failures: the CLI maps them to exit code 2.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parsed scenario description. The file format is a sectioned key = value
// text file; see the README for the grammar.
struct ScenarioConfig {
  std::string kind;

  int nx = 32, ny = 32, nz = 8;
  double lx = 32.0, ly = 32.0, lz = 8.0;

  double mass = 1.0;
  double charge = 0.3;

  double dt = 0.01;
  double duration = 2.0;

  std::array<double, 3> center{16.0, 16.0, 0.0};
  std::array<int, 3> momentum_mode{1, 0, 0};  // wavenumber = 2 pi mode / L
  double width = 3.0;
  std::string sector = "plus";

  int random_transforms = 100;
  std::uint64_t seed = 1;

  std::string output_directory;
  bool plots = true;

  Grid grid_2d() const;
  Grid grid_3d() const;
  PacketSpec packet(bool three_d) const;
};

ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

struct ScenarioResult {
  bool passed = false;
  nlohmann::json report;
  DiagnosticsSeries diagnostics;
};

ScenarioResult run_scenario(const ScenarioConfig& config);

// Runs the scenario and writes diagnostics.csv, report.json and (optionally)
// one SVG per diagnostics channel. Returns the process exit code
// (0 pass, 1 tolerance failure).
int run_scenario_to_directory(const ScenarioConfig& config, const std::string& out_dir, bool plots);

// One row per scenario kind, stable ordering.
std::string list_scenarios();

// Full algebra audit of one representation family: the representation itself
// plus `random_transforms` seeded unitary transforms of it.
nlohmann::json audit_representation(const GammaRepresentation& rep, int random_transforms,
                                    std::uint64_t seed);

}  // namespace descent
