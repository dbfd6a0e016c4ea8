#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "geofol/cli/config.hpp"
#include "geofol/cli/report.hpp"
#include "geofol/cli/scenarios.hpp"
#include "geofol/models/cutoff.hpp"
#include "geofol/models/lightlike.hpp"
#include "geofol/models/thurston.hpp"
#include "geofol/models/typechange.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace py = pybind11;
using namespace geofol;

namespace {

cli::Config make_config(std::optional<std::uint64_t> seed,
                        std::optional<double> tol_scale,
                        const std::map<std::string, std::string>& overrides) {
  cli::Config cfg;
  for (const auto& [k, v] : overrides) cli::apply_override(cfg, k, v);
  if (seed) cfg.seed = *seed;
  if (tol_scale) cfg.tol_scale = *tol_scale;
  return cfg;
}

typechange::Params default_params() {
  static const typechange::Params P = typechange::make_params(xi_cutoff());
  return P;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Frame-based pseudo-Riemannian geometry engine: geodesic circle "
      "foliations on a five-dimensional nilmanifold circle bundle, metric "
      "verification scenarios, and the supporting closed forms.";

  m.def("scenario_names",
        [] { return cli::scenario_names(); },
        "Names accepted by run_scenario, ending with the composite 'all'.");

  m.def(
      "run_scenario",
      [](const std::string& name, std::optional<std::uint64_t> seed,
         std::optional<double> tol_scale,
         std::optional<std::filesystem::path> out_dir,
         const std::map<std::string, std::string>& overrides) {
        cli::Config cfg = make_config(seed, tol_scale, overrides);
        cli::Report rep;
        if (out_dir) {
          rep = cli::run_scenario(name, cfg, &*out_dir);
          cli::write_report_json(rep, *out_dir);
        } else {
          rep = cli::run_scenario(name, cfg, nullptr);
        }
        return cli::render_report_json(rep);
      },
      py::arg("name"), py::arg("seed") = std::nullopt,
      py::arg("tol_scale") = std::nullopt, py::arg("out_dir") = std::nullopt,
      py::arg("overrides") = std::map<std::string, std::string>{},
      "Runs one verification scenario and returns its report as a JSON "
      "string (deterministic for fixed seed and overrides).  When out_dir "
      "is given, report.json and any trajectory CSVs are written there.  "
      "Overrides use the config-file keys, e.g. {'closure.horizon': '20'}.");

  m.def("config_reference", &cli::config_reference,
        "Reference text for every config key with its default.");

  // Closed forms of the foliation flow.
  m.def(
      "exact_flow_w",
      [](const Eigen::VectorXd& p, double s) {
        return Eigen::VectorXd(thurston::exact_flow_w(p, s));
      },
      py::arg("p"), py::arg("s"),
      "Time-s point of the normalized foliation field W through chart point "
      "p = (x, y, z, t, u); throws for starts on the degenerate set.");
  m.def(
      "exact_flow_k",
      [](double k, const Eigen::VectorXd& p, double s) {
        return Eigen::VectorXd(thurston::exact_flow_k(k, p, s));
      },
      py::arg("k"), py::arg("p"), py::arg("s"),
      "Closed-form helix flow with constant transverse slope k.");

  // Type-changing metric closed forms (certified exponential-profile
  // parameters; the u argument is 2*pi-periodic).
  m.def(
      "g0_matrix",
      [](double u) { return Eigen::MatrixXd(typechange::G0(default_params(), u)); },
      py::arg("u"),
      "Near-degenerate 5x5 Gram in the frame (dt, V1, V2, dz, du).");
  m.def(
      "g_xx",
      [](double u) { return typechange::g_xx(default_params(), u); },
      py::arg("u"),
      "Squared norm of the foliation field: 4 f(u)^3 |f(u)|; changes sign "
      "across the degenerate set.");
  m.def(
      "chi",
      [](double v) { return typechange::chi(default_params(), v); },
      py::arg("v"),
      "Plateau transition profile: exactly 1 below the zone edge, exactly 0 "
      "past the band end.");
  m.def(
      "typechange_params",
      [] {
        const typechange::Params P = default_params();
        py::dict d;
        d["eta"] = P.eta;
        d["zone"] = P.zone;
        d["band_end"] = P.band_end;
        d["u_switch"] = P.u_switch;
        return d;
      },
      "Certified construction parameters for the exponential profile.");

  m.def(
      "lightlike_gram",
      [] {
        ChartPoint p = Vec::Zero(5);
        return Eigen::MatrixXd(lightlike::model().gram(p));
      },
      "Constant Gram of the degenerate-direction metric in the frame "
      "(X, du, V1, V2, 2dt+dz).");

  m.def(
      "signature",
      [](const Eigen::MatrixXd& g) {
        SignatureTriple s = signature(g);
        return py::make_tuple(s.plus, s.minus, s.zero);
      },
      py::arg("gram"),
      "(plus, minus, zero) eigenvalue-sign counts of a symmetric matrix.");
}
