#include "geofol/ode/rk.hpp"

#include <algorithm>
#include <cmath>

#include "geofol/ode/integrate.hpp"

namespace geofol {

namespace {

// Dormand-Prince RK5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 4th-order weights for the error estimate.
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                 e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640,
                 e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

Vec rk4_step(const Rhs& f, double s, const Vec& y, double h) {
  Vec k1 = f(s, y);
  Vec k2 = f(s + h / 2, y + (h / 2) * k1);
  Vec k3 = f(s + h / 2, y + (h / 2) * k2);
  Vec k4 = f(s + h, y + h * k3);
  return y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
}

}  // namespace

Vec hermite_eval(const StepRecord& st, double s) {
  const double th = (s - st.s0) / st.h;
  const double t2 = th * th, t3 = t2 * th;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + th;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * st.y0 + (h10 * st.h) * st.f0 + h01 * st.y1 +
         (h11 * st.h) * st.f1;
}

OdeResult integrate_ode(const Rhs& f, double s0, double s1, const Vec& y0,
                        const OdeOptions& opt,
                        const std::function<bool(const StepRecord&)>& on_step) {
  OdeResult res;
  const double dir = (s1 >= s0) ? 1.0 : -1.0;
  const double span = std::abs(s1 - s0);
  double s = s0;
  Vec y = y0;

  if (span == 0) {
    res.ok = true;
    res.s_end = s0;
    res.y_end = y0;
    return res;
  }

  if (opt.fixed_rk4) {
    const long n = std::max<long>(1, (long)std::ceil(span / opt.fixed_h));
    const double h = dir * span / (double)n;
    for (long i = 0; i < n; ++i) {
      StepRecord st;
      st.s0 = s;
      st.h = h;
      st.y0 = y;
      st.f0 = f(s, y);
      y = rk4_step(f, s, y, h);
      s = s0 + (double)(i + 1) * h;
      st.y1 = y;
      st.f1 = f(s, y);
      ++res.accepted;
      if (on_step && !on_step(st)) {
        res.ok = true;
        res.s_end = s;
        res.y_end = y;
        return res;
      }
    }
    res.ok = true;
    res.s_end = s;
    res.y_end = y;
    return res;
  }

  double h = dir * std::min(opt.h_init, opt.h_max);
  Vec f0 = f(s, y);
  double err_prev = 1.0;  // PI controller memory
  long steps = 0;

  while (dir * (s1 - s) > 0) {
    if (++steps > opt.max_steps) {
      res.error = "max step count exceeded";
      return res;
    }
    if (std::abs(h) > dir * (s1 - s)) h = s1 - s;
    if (std::abs(h) < opt.h_min) {
      res.error = "step size underflow";
      return res;
    }

    Vec k1 = f0;
    Vec k2 = f(s + c2 * h, y + h * (a21 * k1));
    Vec k3 = f(s + c3 * h, y + h * (a31 * k1 + a32 * k2));
    Vec k4 = f(s + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    Vec k5 = f(s + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    Vec k6 = f(s + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 +
                               a65 * k5));
    Vec y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    Vec k7 = f(s + h, y1);  // FSAL
    Vec err_vec =
        h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc =
          opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
      err = std::max(err, std::abs(err_vec[i]) / sc);
    }

    if (err <= 1.0) {
      StepRecord st;
      st.s0 = s;
      st.h = h;
      st.y0 = y;
      st.f0 = k1;
      st.y1 = y1;
      st.f1 = k7;
      s += h;
      y = y1;
      f0 = k7;
      ++res.accepted;
      // PI controller (Gustafsson): order 5, exponents 0.7/5 and 0.4/5.
      const double e = std::max(err, 1e-10);
      double fac = 0.9 * std::pow(e, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
      fac = std::clamp(fac, 0.2, 5.0);
      h = dir * std::min(std::abs(h) * fac, opt.h_max);
      err_prev = e;
      if (on_step && !on_step(st)) {
        res.ok = true;
        res.s_end = s;
        res.y_end = y;
        return res;
      }
    } else {
      ++res.rejected;
      const double fac = std::clamp(0.9 * std::pow(err, -1.0 / 5.0), 0.1, 0.9);
      h *= fac;
    }
  }

  res.ok = true;
  res.s_end = s;
  res.y_end = y;
  return res;
}

namespace {

Trajectory run_trajectory(const Rhs& rhs, const Vec& y0, double s_end,
                          const OdeOptions& opt, int dim, bool is_geodesic,
                          const std::function<double(const Vec&)>& energy_of) {
  Trajectory traj;
  traj.dim = dim;
  traj.is_geodesic = is_geodesic;
  traj.s.push_back(0.0);
  traj.state.push_back(y0);
  if (energy_of) traj.energy.push_back(energy_of(y0));

  auto on_step = [&](const StepRecord& st) {
    traj.steps.push_back(st);
    traj.s.push_back(st.s0 + st.h);
    traj.state.push_back(st.y1);
    if (energy_of) traj.energy.push_back(energy_of(st.y1));
    return true;
  };
  OdeResult res = integrate_ode(rhs, 0.0, s_end, y0, opt, on_step);
  traj.ok = res.ok;
  traj.error = res.error;
  return traj;
}

}  // namespace

Trajectory integrate_flow(const VectorField& field, const ChartPoint& p0,
                          double s_end, const OdeOptions& opt) {
  Rhs rhs = [&field](double, const Vec& y) { return field.value(y); };
  return run_trajectory(rhs, p0, s_end, opt, (int)p0.size(), false, {});
}

Trajectory integrate_geodesic(const CoordMetric& metric, const ChartPoint& p0,
                              const Vec& v0, double s_end,
                              const OdeOptions& opt) {
  const int n = (int)p0.size();
  Rhs rhs = [&metric, n](double, const Vec& y) {
    ChartPoint p = y.head(n);
    Vec v = y.tail(n);
    Vec out(2 * n);
    out.head(n) = v;
    out.tail(n) = -geodesic_acceleration(metric, p, v);
    return out;
  };
  Vec y0(2 * n);
  y0.head(n) = p0;
  y0.tail(n) = v0;
  auto energy_of = [&metric, n](const Vec& y) {
    ChartPoint p = y.head(n);
    Vec v = y.tail(n);
    return v.dot(metric.value(p) * v);
  };
  return run_trajectory(rhs, y0, s_end, opt, n, true, energy_of);
}

double max_energy_drift(const Trajectory& traj) {
  if (traj.energy.empty()) return 0.0;
  const double e0 = traj.energy.front();
  double drift = 0.0;
  for (double e : traj.energy) drift = std::max(drift, std::abs(e - e0));
  return drift;
}

double arc_length(const Trajectory& traj,
                  const std::function<double(const ChartPoint&, const Vec&)>& norm) {
  const int n = traj.dim;
  auto speed = [&](const Vec& y, const Vec& f) {
    ChartPoint p = y.head(n);
    Vec v = traj.is_geodesic ? Vec(y.tail(n)) : Vec(f.head(n));
    return norm(p, v);
  };
  double total = 0.0;
  for (const StepRecord& st : traj.steps) {
    const double sm = st.s0 + st.h / 2;
    Vec ym = hermite_eval(st, sm);
    // Midpoint derivative from the Hermite cubic.
    const double th = 0.5;
    const double d00 = (6 * th * th - 6 * th) / st.h;
    const double d10 = 3 * th * th - 4 * th + 1;
    const double d01 = (-6 * th * th + 6 * th) / st.h;
    const double d11 = 3 * th * th - 2 * th;
    Vec fm = d00 * st.y0 + d10 * st.f0 + d01 * st.y1 + d11 * st.f1;
    total += (st.h / 6) *
             (speed(st.y0, st.f0) + 4 * speed(ym, fm) + speed(st.y1, st.f1));
  }
  return total;
}

}  // namespace geofol
