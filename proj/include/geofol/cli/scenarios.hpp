#pragma once

#include "geofol/cli/config.hpp"
#include "geofol/cli/report.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace geofol::cli {

// Check suites.  Each appends its checks (and data tables) to `rep`;
// thresholds are the pinned acceptance bounds times cfg.tol_scale.
void suite_bracket_table(const Config& cfg, Report& rep);   // frame brackets
void suite_lightlike(const Config& cfg, Report& rep);       // lightlike metric
void suite_typechange(const Config& cfg, Report& rep,
                      bool sin_variant);                     // assembled metric
void suite_divergence(const Config& cfg, Report& rep);      // div X, two paths
void suite_exact_flow(const Config& cfg, Report& rep);      // closed-form oracle
void suite_unbounded_length(const Config& cfg, Report& rep);// W-orbit lengths
void suite_leaf_sweep(const Config& cfg, Report& rep,
                      const std::filesystem::path* out_dir);// deformed leaves
void suite_sasaki(const Config& cfg, Report& rep);          // tangent lifts
void suite_riemannize(const Config& cfg, Report& rep);      // Riemannian rebuild
void suite_surfaces(const Config& cfg, Report& rep);        // surface audits
void suite_cross_paths(const Config& cfg, Report& rep);     // Koszul vs coords
void suite_mutations(const Config& cfg, Report& rep);       // defect battery

const std::vector<std::string>& scenario_names();

// Runs one scenario (composing the suites above) and returns its report.
// `out_dir` may be null; when set, trajectory CSVs are written there.
Report run_scenario(const std::string& name, const Config& cfg,
                    const std::filesystem::path* out_dir);

}  // namespace geofol::cli
