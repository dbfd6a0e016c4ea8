#include "doctest.h"

#include "geofol/cli/config.hpp"
#include "geofol/cli/report.hpp"
#include "geofol/cli/scenarios.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace geofol::cli;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config file overrides defaults and keeps the rest") {
  fs::path p = write_temp("geofol_cfg_ok.ini",
                          "# comment\n"
                          "[run]\n"
                          "seed = 42\n"
                          "tol_scale = 2.5\n"
                          "\n"
                          "[integrate]\n"
                          "rtol = 1e-8\n"
                          "; another comment\n"
                          "[sweep]\n"
                          "u0 = 1.0, 0.5\n"
                          "csv = false\n");
  Config cfg = load_config(p.string());
  CHECK(cfg.seed == 42);
  CHECK(cfg.tol_scale == 2.5);
  CHECK(cfg.rtol == 1e-8);
  CHECK(cfg.atol == 1e-12);  // untouched default
  CHECK(cfg.sweep_u0 == std::vector<double>{1.0, 0.5});
  CHECK(!cfg.write_csv);
}

TEST_CASE("config parser reports the offending line") {
  fs::path p = write_temp("geofol_cfg_bad.ini",
                          "[run]\n"
                          "seed = 1\n"
                          "bogus_key = 3\n");
  try {
    (void)load_config(p.string());
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    std::string msg = e.what();
    CHECK(msg.find(":3:") != std::string::npos);
    CHECK(msg.find("bogus_key") != std::string::npos);
  }
  fs::path q = write_temp("geofol_cfg_badval.ini",
                          "[integrate]\n"
                          "rtol = banana\n");
  CHECK_THROWS_AS((void)load_config(q.string()), std::runtime_error);
  fs::path r = write_temp("geofol_cfg_badrange.ini",
                          "[integrate]\n"
                          "rtol = -1\n");
  CHECK_THROWS_AS((void)load_config(r.string()), std::runtime_error);
  CHECK_THROWS_AS((void)load_config("/nonexistent/geofol.ini"),
                  std::runtime_error);
}

TEST_CASE("dotted overrides mirror the file syntax") {
  Config cfg;
  apply_override(cfg, "run.seed", "7");
  apply_override(cfg, "closure.horizon", "12.5");
  CHECK(cfg.seed == 7);
  CHECK(cfg.horizon == 12.5);
  CHECK_THROWS_AS(apply_override(cfg, "run.nope", "1"), std::runtime_error);
  CHECK_THROWS_AS(apply_override(cfg, "no_dot", "1"), std::runtime_error);
}

TEST_CASE("config reference documents every section") {
  std::string ref = config_reference();
  for (const char* key : {"tol_scale", "seed", "eta_cap", "rtol", "horizon",
                          "u0", "surface_samples"})
    CHECK(ref.find(key) != std::string::npos);
}

TEST_CASE("shortest round-trip double formatting") {
  for (double x : {0.1, 1.0, 3.141592653589793, 1e-17, -2.5e300, 0.0}) {
    std::string s = format_double(x);
    CHECK(std::stod(s) == x);
  }
  // Shortest form: 0.1 prints as written, not as a 17-digit expansion.
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("check constructors encode pass/fail orientation") {
  CHECK(check_le("a", "x", 0.5, 1.0).pass);
  CHECK(!check_le("a", "x", 2.0, 1.0).pass);
  CHECK(check_ge("b", "x", 12.0, 10.0).pass);
  CHECK(!check_ge("b", "x", 2.0, 10.0).pass);
  CHECK(check_true("c", "x", true).pass);
  CHECK(!check_true("c", "x", false).pass);
  CHECK(check_count("d", "x", 4, 4).pass);
  CHECK(!check_count("d", "x", 3, 4).pass);
  // Non-finite measurements can never pass.
  CHECK(!check_le("e", "x", std::numeric_limits<double>::quiet_NaN(), 1.0)
             .pass);
  CHECK(!check_le("e", "x", std::numeric_limits<double>::infinity(), 1.0)
             .pass);
  Report rep;
  rep.add(check_le("a", "x", 0.5, 1.0));
  CHECK(rep.overall());
  rep.add(check_le("a", "x", 2.0, 1.0));
  CHECK(!rep.overall());
}

TEST_CASE("report serialization is deterministic") {
  Report rep;
  rep.scenario = "demo";
  rep.seed = 5;
  rep.tol_scale = 1.0;
  rep.fp("model.eta", 1.3);
  rep.add(check_le("demo.check", "identity string", 1e-12, 1e-9));
  Table t;
  t.name = "rows";
  t.columns = {"a", "b"};
  t.rows = {{"1", "2"}};
  rep.tables.push_back(t);
  rep.notes.push_back("note");
  std::string a = render_report_json(rep);
  std::string b = render_report_json(rep);
  CHECK(a == b);
  CHECK(a.find("geofol-report/1") != std::string::npos);
  CHECK(a.find("demo.check") != std::string::npos);
  CHECK(a.find("model.eta") != std::string::npos);

  fs::path dir = fs::temp_directory_path() / "geofol_report_test";
  fs::create_directories(dir);
  write_report_json(rep, dir);
  std::string c1 = slurp(dir / "report.json");
  write_report_json(rep, dir);
  std::string c2 = slurp(dir / "report.json");
  CHECK(c1 == c2);
  CHECK(c1 == a);  // render_report_json already ends with the newline
}

TEST_CASE("printed check lines carry the verdict and the anchor") {
  Report rep;
  rep.scenario = "demo";
  rep.add(check_le("demo.ok", "anchor text", 0.0, 1.0));
  rep.add(check_le("demo.bad", "other anchor", 2.0, 1.0));
  std::ostringstream os;
  print_checks(rep, os);
  std::string s = os.str();
  CHECK(s.find("[PASS]") != std::string::npos);
  CHECK(s.find("[FAIL]") != std::string::npos);
  CHECK(s.find("anchor text") != std::string::npos);
  CHECK(s.find("demo.bad") != std::string::npos);
}

TEST_CASE("CSV writing is deterministic and column-stable") {
  fs::path dir = fs::temp_directory_path() / "geofol_csv_test";
  fs::create_directories(dir);
  fs::path p = dir / "t.csv";
  std::vector<std::string> cols = {"s", "x"};
  std::vector<std::vector<double>> rows = {{0.0, 0.1}, {1.0, -2.5}};
  write_csv(p, cols, rows);
  std::string a = slurp(p);
  write_csv(p, cols, rows);
  CHECK(slurp(p) == a);
  CHECK(a.rfind("s,x\n", 0) == 0);
  CHECK(a.find("0,0.1") != std::string::npos);
}

TEST_CASE("scenario registry exposes the eight entry points") {
  const auto& names = scenario_names();
  CHECK(names.size() == 8);
  CHECK(names.back() == "all");
  for (const char* want :
       {"verify-lightlike", "verify-typechange", "verify-typechange-sin",
        "orbit-sweep", "sasaki-check", "surface-audit", "riemannize-check"}) {
    bool found = false;
    for (const auto& n : names) found = found || n == want;
    CHECK(found);
  }
  Config cfg;
  CHECK_THROWS_AS((void)run_scenario("bogus", cfg, nullptr),
                  std::invalid_argument);
}

TEST_CASE("a fast scenario runs green end to end") {
  // riemannize-check touches no integrators, so it stays quick enough for a
  // unit test while exercising the full report pipeline.
  Config cfg;
  Report rep = run_scenario("riemannize-check", cfg, nullptr);
  CHECK(rep.scenario == "riemannize-check");
  CHECK(rep.overall());
  CHECK(!rep.checks.empty());
  std::string a = render_report_json(rep);
  Report rep2 = run_scenario("riemannize-check", cfg, nullptr);
  CHECK(render_report_json(rep2) == a);
}
