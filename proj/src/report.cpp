#include "geofol/cli/report.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <system_error>

namespace geofol::cli {

using ordered_json = nlohmann::ordered_json;

Check check_le(std::string name, std::string anchor, double measured,
               double threshold) {
  Check c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.measured = measured;
  c.threshold = threshold;
  c.pass = std::isfinite(measured) && measured <= threshold;
  return c;
}

Check check_ge(std::string name, std::string anchor, double measured,
               double bound) {
  Check c;
  c.name = std::move(name);
  c.anchor = std::move(anchor);
  c.measured = measured;
  c.threshold = bound;
  c.pass = std::isfinite(measured) && measured >= bound;
  return c;
}

Check check_true(std::string name, std::string anchor, bool ok) {
  return check_le(std::move(name), std::move(anchor), ok ? 0.0 : 1.0, 0.0);
}

Check check_count(std::string name, std::string anchor, long got, long want) {
  return check_le(std::move(name), std::move(anchor),
                  static_cast<double>(std::labs(got - want)), 0.0);
}

bool Report::overall() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string render_report_json(const Report& rep) {
  ordered_json j;
  j["schema"] = Report::kSchema;
  j["scenario"] = rep.scenario;
  j["seed"] = rep.seed;
  j["tol_scale"] = rep.tol_scale;
  ordered_json fp = ordered_json::object();
  for (const auto& [k, v] : rep.fingerprint) fp[k] = v;
  j["fingerprint"] = fp;
  ordered_json checks = ordered_json::array();
  for (const auto& c : rep.checks) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["anchor"] = c.anchor;
    jc["measured"] = c.measured;
    jc["threshold"] = c.threshold;
    jc["pass"] = c.pass;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  if (!rep.tables.empty()) {
    ordered_json tables = ordered_json::object();
    for (const auto& t : rep.tables) {
      ordered_json jt;
      jt["columns"] = t.columns;
      jt["rows"] = t.rows;
      tables[t.name] = jt;
    }
    j["tables"] = tables;
  }
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  j["overall"] = rep.overall();
  return j.dump(2) + "\n";
}

void write_report_json(const Report& rep, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const auto path = out_dir / "report.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << render_report_json(rep);
}

void print_checks(const Report& rep, std::ostream& os) {
  for (const auto& c : rep.checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.anchor
       << "  measured=" << format_double(c.measured)
       << " threshold=" << format_double(c.threshold) << "\n";
  }
  os << (rep.overall() ? "OVERALL PASS" : "OVERALL FAIL") << " ("
     << rep.scenario << ")\n";
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (std::size_t i = 0; i < columns.size(); ++i)
    out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
}

}  // namespace geofol::cli
