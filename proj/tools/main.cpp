#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "descent/scenario.hpp"

namespace {

namespace fs = std::filesystem;

std::string default_output_root() {
  if (const char* env = std::getenv("DESCENT_OUTPUT_ROOT"); env && *env) return env;
  return "out";
}

std::string scenario_output_dir(const descent::ScenarioConfig& cfg, const std::string& config_path,
                                const std::string& out_flag) {
  const std::string stem = fs::path(config_path).stem().string();
  if (!out_flag.empty()) return (fs::path(out_flag) / stem).string();
  if (!cfg.output_directory.empty()) return cfg.output_directory;
  return (fs::path(default_output_root()) / stem).string();
}

int run_one(const descent::ScenarioConfig& cfg, const std::string& config_path, const std::string& out_flag,
            bool no_plots) {
  const std::string dir = scenario_output_dir(cfg, config_path, out_flag);
  try {
    const int code = descent::run_scenario_to_directory(cfg, dir, cfg.plots && !no_plots);
    std::cout << cfg.kind << " (" << config_path << "): " << (code == 0 ? "PASS" : "FAIL") << "  ->  "
              << dir << "\n";
    if (code != 0) {
      std::ifstream report(fs::path(dir) / "report.json");
      if (report) {
        nlohmann::json j;
        report >> j;
        for (const auto& failure : j.value("failures", nlohmann::json::array()))
          std::cout << "    failed: " << failure.get<std::string>() << "\n";
      }
    }
    return code;
  } catch (const std::exception& e) {
    std::cerr << cfg.kind << " (" << config_path << "): error: " << e.what() << "\n";
    return 1;
  }
}

int run_command(const std::vector<std::string>& config_paths, const std::string& out_flag, int jobs,
                bool no_plots) {
  // parse everything first: a malformed config aborts with exit 2 before any
  // scenario runs or outputs appear
  std::vector<descent::ScenarioConfig> configs;
  for (const std::string& path : config_paths) {
    try {
      configs.push_back(descent::load_config(path));
    } catch (const descent::ConfigError& e) {
      std::cerr << path << ": " << e.what() << "\n";
      return 2;
    }
  }

  if (jobs <= 1 || configs.size() <= 1) {
    int worst = 0;
    for (std::size_t i = 0; i < configs.size(); ++i)
      worst = std::max(worst, run_one(configs[i], config_paths[i], out_flag, no_plots));
    return worst;
  }

  // independent scenarios in parallel processes
  int worst = 0;
  std::size_t next = 0;
  int active = 0;
  auto reap = [&]() {
    int status = 0;
    const pid_t pid = waitpid(-1, &status, 0);
    if (pid > 0) {
      --active;
      if (WIFEXITED(status))
        worst = std::max(worst, WEXITSTATUS(status));
      else
        worst = std::max(worst, 1);
    }
  };
  while (next < configs.size() || active > 0) {
    while (next < configs.size() && active < jobs) {
      const pid_t pid = fork();
      if (pid == 0) {
        _exit(run_one(configs[next], config_paths[next], out_flag, no_plots));
      }
      if (pid < 0) {
        std::cerr << "fork failed\n";
        return 1;
      }
      ++active;
      ++next;
    }
    if (active > 0) reap();
  }
  return worst;
}

int audit_command(const std::string& rep_path, const std::string& out_flag, int transforms,
                  std::uint64_t seed) {
  descent::GammaRepresentation rep;
  try {
    std::ifstream in(rep_path);
    if (!in) {
      std::cerr << "cannot open " << rep_path << "\n";
      return 2;
    }
    nlohmann::json j;
    in >> j;
    rep = descent::representation_from_json(j);
  } catch (const std::exception& e) {
    std::cerr << rep_path << ": " << e.what() << "\n";
    return 2;
  }

  try {
    const nlohmann::json report = descent::audit_representation(rep, transforms, seed);
    const std::string dir =
        out_flag.empty() ? (fs::path(default_output_root()) / "audit").string() : out_flag;
    fs::create_directories(dir);
    std::ofstream out(fs::path(dir) / "report.json");
    out << report.dump(2) << "\n";
    const bool passed = report["passed"].get<bool>();
    std::cout << "audit of '" << rep.label << "': " << (passed ? "PASS" : "FAIL") << " (max residual "
              << report["max_residual"].get<double>() << ")  ->  " << dir << "\n";
    return passed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "audit failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"descent: dimensional reduction experiments for Dirac and Maxwell fields"};
  app.require_subcommand(1);

  std::vector<std::string> config_paths;
  std::string out_flag;
  int jobs = 1;
  bool no_plots = false;

  CLI::App* run = app.add_subcommand("run", "run scenarios from config files");
  run->add_option("configs", config_paths, "scenario config files")->required()->expected(-1);
  run->add_option("--out", out_flag, "output root directory");
  run->add_option("--jobs", jobs, "run independent scenarios in parallel processes");
  run->add_flag("--no-plots", no_plots, "skip SVG plot generation");

  CLI::App* list = app.add_subcommand("list", "list scenario kinds");

  std::string rep_path;
  int transforms = 100;
  std::uint64_t seed = 1;
  CLI::App* audit = app.add_subcommand("audit", "audit a gamma representation from JSON");
  audit->add_option("representation", rep_path, "representation JSON file")->required();
  audit->add_option("--out", out_flag, "output directory");
  audit->add_option("--transforms", transforms, "number of random unitary transforms");
  audit->add_option("--seed", seed, "seed for the random transforms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage problems are config errors
  }

  if (list->parsed()) {
    std::cout << descent::list_scenarios();
    return 0;
  }
  if (run->parsed()) return run_command(config_paths, out_flag, jobs, no_plots);
  if (audit->parsed()) return audit_command(rep_path, out_flag, transforms, seed);
  return 2;
}
