#pragma once

#include "geofol/core/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace geofol::cli {

// One verified statement: `anchor` is the human-readable identity being
// checked (e.g. "bracket [W,V1] = V2"), `measured` the worst observed value,
// `threshold` the bound it must stay under.  Equality- and count-style checks
// encode as measured <= threshold as well (threshold 0 for exact).
struct Check {
  std::string name;      // stable machine id, e.g. "typechange.signature"
  std::string anchor;    // identity string shown in reports
  double measured = 0;
  double threshold = 0;
  bool pass = false;
};

Check check_le(std::string name, std::string anchor, double measured,
               double threshold);
// Lower bound: pass iff measured >= bound (kept as measured/threshold with
// the orientation recorded in the anchor text).
Check check_ge(std::string name, std::string anchor, double measured,
               double bound);
// pass iff `ok`; measured encodes 0 (ok) / 1 (not ok) against threshold 0.
Check check_true(std::string name, std::string anchor, bool ok);
// pass iff got == want; measured = |got - want| against threshold 0.
Check check_count(std::string name, std::string anchor, long got, long want);

// Scenario outcome.  `fingerprint` records the resolved model parameters and
// construction audit scalars; `tables` holds scenario data (e.g. sweep rows)
// as column-name -> row-values maps.  Serialization is fully deterministic:
// insertion order is preserved and nothing time- or host-dependent enters.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  static constexpr const char* kSchema = "geofol-report/1";
  std::string scenario;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
  std::vector<std::pair<std::string, double>> fingerprint;
  std::vector<Check> checks;
  std::vector<Table> tables;
  std::vector<std::string> notes;

  bool overall() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void fp(std::string key, double value) {
    fingerprint.emplace_back(std::move(key), value);
  }
};

// Shortest round-trip decimal form of x (deterministic, locale-free).
std::string format_double(double x);

std::string render_report_json(const Report& rep);
void write_report_json(const Report& rep, const std::filesystem::path& out_dir);

// One line per check: "[PASS] name: anchor  measured=... threshold=..."
void print_checks(const Report& rep, std::ostream& os);

// CSV with fixed columns; every cell rendered by format_double.
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

}  // namespace geofol::cli
