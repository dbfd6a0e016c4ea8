#pragma once

#include "geofol/conn/christoffel.hpp"
#include "geofol/core/types.hpp"
#include "geofol/ode/rk.hpp"

namespace geofol {

// A sampled integral curve or geodesic.  For geodesics the state is the
// stacked (position, velocity) vector of size 2*dim and `energy` records
// g(v, v) at every accepted step (conserved along exact geodesics).
struct Trajectory {
  bool ok = false;
  std::string error;
  int dim = 0;
  bool is_geodesic = false;
  std::vector<double> s;
  std::vector<Vec> state;
  std::vector<double> energy;
  std::vector<StepRecord> steps;

  ChartPoint point(std::size_t i) const { return state[i].head(dim); }
  Vec velocity(std::size_t i) const {
    return is_geodesic ? Vec(state[i].tail(dim)) : Vec();
  }
};

Trajectory integrate_flow(const VectorField& field, const ChartPoint& p0,
                          double s_end, const OdeOptions& opt);

Trajectory integrate_geodesic(const CoordMetric& metric, const ChartPoint& p0,
                              const Vec& v0, double s_end,
                              const OdeOptions& opt);

// Maximum |g(v,v)(s) - g(v,v)(0)| over the samples.
double max_energy_drift(const Trajectory& traj);

// Arc length with respect to a caller-supplied norm |.|(p, v) >= 0,
// integrated by composite Simpson over the accepted steps with Hermite
// midpoints.
double arc_length(const Trajectory& traj,
                  const std::function<double(const ChartPoint&, const Vec&)>& norm);

}  // namespace geofol
