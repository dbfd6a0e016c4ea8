#pragma once

#include "geofol/conn/christoffel.hpp"
#include "geofol/core/types.hpp"
#include "geofol/ode/integrate.hpp"
#include "geofol/ode/quotient.hpp"

#include <limits>

namespace geofol {

struct ClosureOptions {
  double tol_close = 1e-6;  // quotient-distance threshold for a return
  double tol_align = 1e-6;  // unit-velocity mismatch threshold (after deck
                            // transport through the matched word)
  double horizon = 50.0;    // maximum parameter span scanned
  double min_period = 1e-3;
  double capture_radius = 0.3;  // refine only approaches below this
  int max_refines = 300;
  OdeOptions ode;

  // Escape detection: stop scanning once |state[escape_coord]| exceeds the
  // threshold and report the orbit as escaped (witness recorded).
  int escape_coord = -1;
  double escape_value = 0;

  // Periodic-drive shortcut: when a coordinate advances at the constant rate
  // field[drive_coord] (evaluated at the start point) and is periodic with
  // drive_period, returns can only happen at exact multiples of
  // drive_period / rate.  Those candidates are evaluated directly, which
  // avoids distance scans for orbits whose chart excursion amplifies
  // roundoff far beyond the closure tolerance.
  int drive_coord = -1;
  double drive_period = 0;
  int max_drive_returns = 3;

  // Optional norm |.|(p, v) used to report the orbit length over one period.
  std::function<double(const ChartPoint&, const Vec&)> aux_norm;
};

struct ClosureReport {
  bool ok = true;
  std::string error;
  bool closed = false;
  bool escaped = false;
  double period = 0;
  double closure_residual = std::numeric_limits<double>::infinity();
  double align_residual = std::numeric_limits<double>::infinity();
  double best_approach = std::numeric_limits<double>::infinity();
  double best_approach_s = 0;
  double escape_s = 0;
  double escape_witness = 0;
  double length = 0;
  Word word;
};

// Integral curve of a vector field.
ClosureReport detect_closed_orbit(const VectorField& field,
                                  const ChartPoint& p0, const QuotientSpec& q,
                                  const ClosureOptions& opt);

// Same, but the orbit is produced by an exact flow map (p, s) -> p(s); the
// field is still used for velocities and the drive rate.  Requires the
// periodic-drive shortcut to be configured.
ClosureReport detect_closed_orbit_map(
    const std::function<ChartPoint(const ChartPoint&, double)>& flow_map,
    const VectorField& field, const ChartPoint& p0, const QuotientSpec& q,
    const ClosureOptions& opt);

// Geodesic of a coordinate metric.
ClosureReport detect_closed_geodesic(const CoordMetric& metric,
                                     const ChartPoint& p0, const Vec& v0,
                                     const QuotientSpec& q,
                                     const ClosureOptions& opt);

// Self-intersection audit for a closed loop given as uniform parameter
// samples over one period: flags any pair of points closer than eps whose
// cyclic parameter separation exceeds guard_frac of the period.
bool loop_is_simple(const std::vector<ChartPoint>& samples,
                    const QuotientSpec& q, double guard_frac, double eps);

}  // namespace geofol
