#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace geofol::cli {

// Runtime configuration shared by the CLI scenarios and the acceptance
// driver.  Parsed from a small INI-style file ([section] headers, key = value
// lines, '#'/';' comments); unknown keys and malformed values are rejected
// with the offending line number.
struct Config {
  // [run]
  std::uint64_t seed = 20260814;  // master seed for every sampled check
  double tol_scale = 1.0;         // multiplies every check threshold

  // [model] - type-change construction knobs
  double eta = 0.0;      // 0 = certify the largest eta <= eta_cap on a grid
  double eta_cap = 1.3;  // cap for the certified neighbourhood half-width
  double min_eig = 1e-3; // eigenvalue floor used by the certification
  int grid_n = 2000;     // certification grid points

  // [integrate]
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_max = 0.25;
  long max_steps = 4000000;

  // [closure]
  double horizon = 50.0;    // max parameter span scanned for a return
  double tol_close = 1e-6;  // quotient-distance closure threshold
  double tol_align = 1e-6;  // velocity alignment threshold

  // [sample]
  int signature_points = 10000;  // signature audit sample count
  int residual_points = 1000;    // geodesic-residual sample count
  int bracket_points = 100;      // bracket-table sample count
  int grid_points = 400;         // u-grid resolution for identity sweeps
  int flow_starts = 20;          // starts for the closed-form flow oracle
  int christoffel_inputs = 100;  // cross-path random inputs per model
  int geodesics_per_type = 5;    // tangent-lift geodesics per causal type
  int surface_samples = 20;      // geodesics per surface audit

  // [sweep]
  std::vector<double> sweep_u0 = {1.5, 1.0, 0.5, 0.3, 0.2};
  bool write_csv = true;
};

// Parses `path` on top of the defaults above.  Throws std::runtime_error
// with a "file:line: message" prefix on unknown keys, bad values, or
// violated range constraints (tolerances and counts must be positive).
Config load_config(const std::string& path);

// Applies one "section.key = value" override (used by CLI flags).
void apply_override(Config& cfg, const std::string& dotted_key,
                    const std::string& value);

// Human-readable reference of every key, its section, and its default.
std::string config_reference();

}  // namespace geofol::cli
