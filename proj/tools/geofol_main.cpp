#include "geofol/cli/config.hpp"
#include "geofol/cli/report.hpp"
#include "geofol/cli/scenarios.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  using namespace geofol::cli;

  CLI::App app{
      "geofol: numerical verification of geodesic circle foliations, "
      "type-changing metrics, tangent-bundle lifts and surface geodesics"};
  app.get_formatter()->column_width(34);

  std::string scenario;
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  double tol = 0;
  std::vector<std::string> overrides;
  bool dump_reference = false;

  std::string scen_help = "scenario to run (one of:";
  for (const auto& n : scenario_names()) scen_help += " " + n;
  scen_help += ")";
  app.add_option("scenario", scenario, scen_help);
  app.add_option("--config", config_path, "INI configuration file")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir,
                 "output directory for report.json and trajectory CSVs "
                 "(created if missing)");
  auto* seed_opt =
      app.add_option("--seed", seed, "override the master random seed");
  auto* tol_opt = app.add_option(
      "--tol", tol, "override the tolerance scale applied to every threshold");
  app.add_option("--set", overrides,
                 "override one config key, e.g. --set sample.flow_starts=5")
      ->type_name("KEY=VALUE");
  app.add_flag("--config-reference", dump_reference,
               "print every config key with its default and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Normalize every usage failure to exit code 2 (CLI11's own codes vary);
    // --help and --version still exit 0 through app.exit.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (dump_reference) {
    std::cout << config_reference();
    return 0;
  }
  if (scenario.empty()) {
    std::cerr << "geofol: missing scenario argument (" << scen_help << ")\n";
    return 2;
  }

  Config cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    for (const auto& ov : overrides) {
      auto eq = ov.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("--set expects KEY=VALUE, got '" + ov + "'");
      apply_override(cfg, ov.substr(0, eq), ov.substr(eq + 1));
    }
    if (*seed_opt) cfg.seed = seed;
    if (*tol_opt) {
      if (!(tol > 0)) throw std::runtime_error("--tol must be positive");
      cfg.tol_scale = tol;
    }
  } catch (const std::exception& e) {
    std::cerr << "geofol: " << e.what() << "\n";
    return 2;
  }

  try {
    std::filesystem::path out;
    const std::filesystem::path* out_ptr = nullptr;
    if (!out_dir.empty()) {
      out = out_dir;
      std::filesystem::create_directories(out);
      out_ptr = &out;
    }
    Report rep = run_scenario(scenario, cfg, out_ptr);
    print_checks(rep, std::cout);
    if (out_ptr != nullptr) {
      write_report_json(rep, out);
      std::cout << "report: " << (out / "report.json").string() << "\n";
    }
    return rep.overall() ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "geofol: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "geofol: internal error: " << e.what() << "\n";
    return 3;
  }
}
