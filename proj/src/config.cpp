#include "geofol/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace geofol::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v) {
  std::size_t pos = 0;
  double x = std::stod(v, &pos);
  if (pos != v.size()) throw std::runtime_error("trailing characters in number '" + v + "'");
  return x;
}

long parse_long(const std::string& v) {
  std::size_t pos = 0;
  long x = std::stol(v, &pos);
  if (pos != v.size()) throw std::runtime_error("trailing characters in integer '" + v + "'");
  return x;
}

std::uint64_t parse_u64(const std::string& v) {
  std::size_t pos = 0;
  unsigned long long x = std::stoull(v, &pos);
  if (pos != v.size()) throw std::runtime_error("trailing characters in integer '" + v + "'");
  return static_cast<std::uint64_t>(x);
}

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::runtime_error("expected a boolean, got '" + v + "'");
}

std::vector<double> parse_double_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw std::runtime_error("empty entry in list '" + v + "'");
    out.push_back(parse_double(item));
  }
  if (out.empty()) throw std::runtime_error("empty list");
  return out;
}

struct KeyDesc {
  const char* doc;
  std::function<std::string(const Config&)> show;
  std::function<void(Config&, const std::string&)> set;
};

void require_pos(double x, const std::string& key) {
  if (!(x > 0)) throw std::runtime_error(key + " must be > 0");
}
void require_pos(long x, const std::string& key) {
  if (x <= 0) throw std::runtime_error(key + " must be > 0");
}

const std::map<std::string, KeyDesc>& key_table() {
  auto dbl = [](double Config::* m, bool positive) {
    return [m, positive](Config& c, const std::string& v) {
      double x = parse_double(v);
      if (positive) require_pos(x, "value");
      c.*m = x;
    };
  };
  auto show_dbl = [](double Config::* m) {
    return [m](const Config& c) {
      std::ostringstream os;
      os << c.*m;
      return os.str();
    };
  };
  auto intp = [](int Config::* m) {
    return [m](Config& c, const std::string& v) {
      long x = parse_long(v);
      require_pos(x, "value");
      c.*m = static_cast<int>(x);
    };
  };
  auto show_int = [](int Config::* m) {
    return [m](const Config& c) { return std::to_string(c.*m); };
  };

  static const std::map<std::string, KeyDesc> table = {
      {"run.seed",
       {"master seed for every sampled check",
        [](const Config& c) { return std::to_string(c.seed); },
        [](Config& c, const std::string& v) { c.seed = parse_u64(v); }}},
      {"run.tol_scale",
       {"multiplies every check threshold", show_dbl(&Config::tol_scale),
        dbl(&Config::tol_scale, true)}},
      {"model.eta",
       {"neighbourhood half-width override (0 = certify on a grid)",
        show_dbl(&Config::eta),
        [](Config& c, const std::string& v) {
          double x = parse_double(v);
          if (x < 0) throw std::runtime_error("model.eta must be >= 0");
          c.eta = x;
        }}},
      {"model.eta_cap",
       {"cap for the certified neighbourhood half-width",
        show_dbl(&Config::eta_cap), dbl(&Config::eta_cap, true)}},
      {"model.min_eig",
       {"eigenvalue floor for the neighbourhood certification",
        show_dbl(&Config::min_eig), dbl(&Config::min_eig, true)}},
      {"model.grid_n",
       {"certification grid points", show_int(&Config::grid_n),
        intp(&Config::grid_n)}},
      {"integrate.rtol",
       {"adaptive integrator relative tolerance", show_dbl(&Config::rtol),
        dbl(&Config::rtol, true)}},
      {"integrate.atol",
       {"adaptive integrator absolute tolerance", show_dbl(&Config::atol),
        dbl(&Config::atol, true)}},
      {"integrate.h_max",
       {"max integrator step", show_dbl(&Config::h_max),
        dbl(&Config::h_max, true)}},
      {"integrate.max_steps",
       {"max accepted integrator steps",
        [](const Config& c) { return std::to_string(c.max_steps); },
        [](Config& c, const std::string& v) {
          long x = parse_long(v);
          require_pos(x, "integrate.max_steps");
          c.max_steps = x;
        }}},
      {"closure.horizon",
       {"max parameter span scanned for a closed orbit",
        show_dbl(&Config::horizon), dbl(&Config::horizon, true)}},
      {"closure.tol_close",
       {"quotient-distance closure threshold", show_dbl(&Config::tol_close),
        dbl(&Config::tol_close, true)}},
      {"closure.tol_align",
       {"velocity alignment threshold", show_dbl(&Config::tol_align),
        dbl(&Config::tol_align, true)}},
      {"sample.signature_points",
       {"signature audit sample count", show_int(&Config::signature_points),
        intp(&Config::signature_points)}},
      {"sample.residual_points",
       {"geodesic-residual sample count", show_int(&Config::residual_points),
        intp(&Config::residual_points)}},
      {"sample.bracket_points",
       {"bracket-table sample count", show_int(&Config::bracket_points),
        intp(&Config::bracket_points)}},
      {"sample.grid_points",
       {"u-grid resolution for identity sweeps", show_int(&Config::grid_points),
        intp(&Config::grid_points)}},
      {"sample.flow_starts",
       {"starts for the closed-form flow oracle", show_int(&Config::flow_starts),
        intp(&Config::flow_starts)}},
      {"sample.christoffel_inputs",
       {"cross-path random inputs per model",
        show_int(&Config::christoffel_inputs), intp(&Config::christoffel_inputs)}},
      {"sample.geodesics_per_type",
       {"tangent-lift geodesics per causal type",
        show_int(&Config::geodesics_per_type), intp(&Config::geodesics_per_type)}},
      {"sample.surface_samples",
       {"geodesics per surface audit", show_int(&Config::surface_samples),
        intp(&Config::surface_samples)}},
      {"sweep.u0",
       {"comma-separated u0 list for the orbit sweep",
        [](const Config& c) {
          std::ostringstream os;
          for (std::size_t i = 0; i < c.sweep_u0.size(); ++i)
            os << (i ? "," : "") << c.sweep_u0[i];
          return os.str();
        },
        [](Config& c, const std::string& v) { c.sweep_u0 = parse_double_list(v); }}},
      {"sweep.csv",
       {"write trajectory CSV files",
        [](const Config& c) { return c.write_csv ? "1" : "0"; },
        [](Config& c, const std::string& v) { c.write_csv = parse_bool(v); }}},
  };
  return table;
}

}  // namespace

Config load_config(const std::string& path) {
  Config cfg;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto err = [&](const std::string& msg) -> std::runtime_error {
      return std::runtime_error(path + ":" + std::to_string(lineno) + ": " + msg);
    };
    auto cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw err("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw err("empty section name");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw err("expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw err("empty key");
    if (section.empty()) throw err("key '" + key + "' outside any [section]");
    std::string dotted = section + "." + key;
    auto it = key_table().find(dotted);
    if (it == key_table().end()) throw err("unknown key '" + dotted + "'");
    try {
      it->second.set(cfg, value);
    } catch (const std::exception& e) {
      throw err(dotted + ": " + e.what());
    }
  }
  return cfg;
}

void apply_override(Config& cfg, const std::string& dotted_key,
                    const std::string& value) {
  auto it = key_table().find(dotted_key);
  if (it == key_table().end())
    throw std::runtime_error("unknown config key '" + dotted_key + "'");
  it->second.set(cfg, value);
}

std::string config_reference() {
  Config defaults;
  std::ostringstream os;
  os << "# Configuration reference (key = default): every recognized key.\n";
  std::string last_section;
  for (const auto& [key, desc] : key_table()) {
    auto dot = key.find('.');
    std::string section = key.substr(0, dot);
    if (section != last_section) {
      os << "\n[" << section << "]\n";
      last_section = section;
    }
    os << key.substr(dot + 1) << " = " << desc.show(defaults) << "  # "
       << desc.doc << "\n";
  }
  return os.str();
}

}  // namespace geofol::cli
