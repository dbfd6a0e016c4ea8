#pragma once

#include "geofol/core/types.hpp"
#include "geofol/ode/closure.hpp"
#include "geofol/ode/integrate.hpp"
#include "geofol/ode/quotient.hpp"

#include <optional>

namespace geofol::surfaces {

// Isometric embedding of a chart into flat R^m with signature index nu
// (<x,x> = -sum_{i<nu} x_i^2 + sum_{i>=nu} x_i^2).
struct EmbeddingSpec {
  int ambient_dim = 0;
  int nu = 0;
  std::function<Vec(const ChartPoint&)> F;
  std::function<Mat(const ChartPoint&)> JF;  // ambient_dim x chart_dim
  double constraint = 0;  // target <F, F> (r^2 for the pseudo-sphere)
};

double ambient_pair(const EmbeddingSpec& E, const Vec& a, const Vec& b);

// g_ij = <d_i F, d_j F>; throws on rank deficiency.
Mat pullback_metric(const EmbeddingSpec& E, const ChartPoint& p);

struct SurfaceModel {
  std::string kind;
  CoordMetric metric;
  QuotientSpec quotient;
  std::optional<EmbeddingSpec> embedding;
  Vec box_lo, box_hi;    // chart box for random states
  int escape_coord = -1; // coordinate watched for escape (w on the hyperboloid)
  double escape_value = 0;
};

// (w, theta) chart, metric -r^2 dw^2 + r^2 cosh^2(w) dtheta^2 derived by
// pullback of (r sinh w, r cosh w cos theta, r cosh w sin theta) and kept in
// closed form with analytic partials.
SurfaceModel pseudosphere(double r);
// (theta, phi) chart, metric dtheta^2 - dphi^2, both coordinates 2pi-periodic.
SurfaceModel einstein_torus();
// Round unit sphere (theta, phi) chart (Sasaki base and sanity anchor).
SurfaceModel round_sphere();
SurfaceModel flat_plane();       // dx^2 + dy^2
SurfaceModel minkowski_plane();  // dt^2 - dx^2 in coordinates (t, x)

// +1 spacelike, -1 timelike, 0 lightlike.
int causal_type(const SurfaceModel& m, const ChartPoint& p, const Vec& v,
                double tol = 1e-10);

struct GeodesicAudit {
  ChartPoint p0;
  Vec v0;
  int causal = 0;
  bool closed = false;
  bool simple = true;      // only meaningful when closed
  double period = 0;
  double length = 0;
  double closure_residual = 0;
  double escape_max = 0;   // max |escape coordinate| reached
  double energy_drift = 0;
  double embedding_drift = 0;  // max |<F,F> - constraint| / (1 + |F|^2)
  bool ok = true;
  std::string error;
};

GeodesicAudit classify_geodesic(const SurfaceModel& m, const ChartPoint& p0,
                                const Vec& v0, double horizon,
                                const OdeOptions& ode, double tol_close);

struct StateSample {
  ChartPoint p;
  Vec v;
};

// Deterministic random unit states: point uniform in the chart box, direction
// angle uniform, scaled to |g(v,v)| = 1 of the requested sign; lightlike
// states take the two null directions (first component 1) alternately.
std::vector<StateSample> random_unit_states(const SurfaceModel& m, int causal,
                                            int count, std::uint64_t seed);

struct ScAuditSummary {
  int causal = 0;
  int count = 0;
  int closed_count = 0;
  double min_length = 0, max_length = 0;
  double length_dispersion = 0;  // max/min - 1 over closed lengths
  bool all_simple = true;
  double min_escape = 0;     // min over non-closed audits of escape_max
  double max_period_err = 0; // max |period - 2pi| over closed audits
  double max_embedding_drift = 0;
  double max_energy_drift = 0;
  double max_closure_residual = 0;
  std::vector<GeodesicAudit> rows;
};

ScAuditSummary sc_audit(const SurfaceModel& m, int causal, int count,
                        std::uint64_t seed, double horizon,
                        const OdeOptions& ode, double tol_close);

}  // namespace geofol::surfaces
