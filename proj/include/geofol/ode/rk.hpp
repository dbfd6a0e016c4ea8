#pragma once

#include "geofol/core/types.hpp"

namespace geofol {

// Embedded Dormand-Prince 5(4) pair with PI step control, plus a fixed-step
// classical RK4 cross-check mode.  Dense output between accepted steps uses
// cubic Hermite interpolation on (y0, f0, y1, f1); candidate events located
// on the interpolant are refined by short re-integration, so the interpolant
// only needs bracketing accuracy.

using Rhs = std::function<Vec(double, const Vec&)>;

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 1e-3;
  double h_max = 0.25;
  double h_min = 1e-14;
  long max_steps = 4000000;
  bool fixed_rk4 = false;  // cross-check mode
  double fixed_h = 1e-3;
};

struct StepRecord {
  double s0 = 0, h = 0;
  Vec y0, y1, f0, f1;
};

struct OdeResult {
  bool ok = false;
  std::string error;
  long accepted = 0, rejected = 0;
  double s_end = 0;
  Vec y_end;
};

Vec hermite_eval(const StepRecord& st, double s);

// Integrates from s0 to s1.  on_step (optional) runs after each accepted step
// and may return false to stop early (result.ok stays true, s_end records
// where integration stopped).
OdeResult integrate_ode(const Rhs& f, double s0, double s1, const Vec& y0,
                        const OdeOptions& opt,
                        const std::function<bool(const StepRecord&)>& on_step = {});

}  // namespace geofol
