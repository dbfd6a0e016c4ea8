#include "geofol/ode/closure.hpp"

#include <algorithm>
#include <cmath>

namespace geofol {

namespace {

double golden_min(const std::function<double(double)>& fn, double a, double b,
                  int iters) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fn(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fn(x2);
    }
  }
  return (f1 < f2) ? x1 : x2;
}

// Everything the generic detector needs from an orbit source.
struct OrbitSource {
  int dim = 0;
  Rhs rhs;  // empty for exact-map sources
  Vec y0;   // initial state (position, or position+velocity)
  std::function<Vec(const Vec&)> position;        // state -> chart point
  std::function<Vec(const Vec&)> velocity;        // state -> chart velocity
  std::function<double(const Vec&)> drive_rate;   // state -> d coord / ds
  std::function<Vec(double)> exact_eval;          // s -> state (maps only)
};

void check_alignment(const QuotientSpec& q, const ChartPoint& p0,
                     const Vec& v0, const ChartPoint& p_end, const Vec& v_end,
                     ClosureReport& rep) {
  rep.word = matching_word(q, p_end, p0);
  Vec tv = act_diff(q, rep.word, p_end, v_end);
  const double n0 = v0.norm(), n1 = tv.norm();
  if (n0 == 0 || n1 == 0) {
    rep.align_residual = std::numeric_limits<double>::infinity();
    return;
  }
  rep.align_residual = (tv / n1 - v0 / n0).norm();
}

void fill_length(const OrbitSource& src, const ClosureOptions& opt,
                 ClosureReport& rep) {
  if (!opt.aux_norm || !rep.closed) return;
  auto speed_at_state = [&](const Vec& y) {
    return opt.aux_norm(src.position(y), src.velocity(y));
  };
  if (src.exact_eval) {
    const int N = 1024;  // composite Simpson over one period
    const double h = rep.period / N;
    double total = speed_at_state(src.exact_eval(0.0)) +
                   speed_at_state(src.exact_eval(rep.period));
    for (int i = 1; i < N; ++i)
      total += (i % 2 ? 4.0 : 2.0) * speed_at_state(src.exact_eval(i * h));
    rep.length = total * h / 3;
    return;
  }
  Trajectory traj;
  traj.dim = src.dim;
  traj.is_geodesic = (src.y0.size() == 2 * src.dim);
  OdeResult r = integrate_ode(src.rhs, 0.0, rep.period, src.y0, opt.ode,
                              [&](const StepRecord& st) {
                                traj.steps.push_back(st);
                                return true;
                              });
  if (r.ok) rep.length = arc_length(traj, opt.aux_norm);
}

ClosureReport drive_detect(const OrbitSource& src, const ChartPoint& p0,
                           const QuotientSpec& q, const ClosureOptions& opt) {
  ClosureReport rep;
  rep.word = identity_word(q);
  const double rate = std::abs(src.drive_rate(src.y0));
  if (rate == 0 || opt.drive_period <= 0) {
    rep.ok = false;
    rep.error = "periodic-drive shortcut needs a nonzero rate and period";
    return rep;
  }
  const double T = opt.drive_period / rate;
  const Vec v0 = src.velocity(src.y0);
  Vec y = src.y0;
  double s = 0;
  for (int m = 1; m <= opt.max_drive_returns; ++m) {
    const double s_next = m * T;
    if (src.exact_eval) {
      y = src.exact_eval(s_next);
    } else {
      OdeResult r = integrate_ode(src.rhs, s, s_next, y, opt.ode);
      if (!r.ok) {
        rep.ok = false;
        rep.error = r.error;
        return rep;
      }
      y = r.y_end;
    }
    s = s_next;
    const ChartPoint pe = src.position(y);
    const double d = quotient_distance(q, pe, p0);
    if (d < rep.best_approach) {
      rep.best_approach = d;
      rep.best_approach_s = s;
    }
    if (d < opt.tol_close) {
      check_alignment(q, p0, v0, pe, src.velocity(y), rep);
      if (rep.align_residual < opt.tol_align) {
        rep.closed = true;
        rep.period = s;
        rep.closure_residual = d;
        fill_length(src, opt, rep);
        return rep;
      }
    }
  }
  return rep;
}

ClosureReport scan_detect(const OrbitSource& src, const ChartPoint& p0,
                          const QuotientSpec& q, const ClosureOptions& opt) {
  ClosureReport rep;
  rep.word = identity_word(q);
  const Vec v0 = src.velocity(src.y0);

  std::vector<StepRecord> steps;
  steps.reserve(4096);

  auto pos_at = [&](double s) -> Vec {
    // Hermite dense output; only used to bracket/refine candidates.
    std::size_t lo = 0, hi = steps.size();
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (steps[mid].s0 <= s)
        lo = mid;
      else
        hi = mid;
    }
    return src.position(hermite_eval(steps[lo], s));
  };
  auto exact_state_at = [&](double s) -> Vec {
    // Authoritative evaluation: short re-integration from the step start.
    std::size_t lo = 0, hi = steps.size();
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (steps[mid].s0 <= s)
        lo = mid;
      else
        hi = mid;
    }
    OdeResult r = integrate_ode(src.rhs, steps[lo].s0, s, steps[lo].y0, opt.ode);
    return r.ok ? r.y_end : Vec(src.position(hermite_eval(steps[lo], s)));
  };

  // Rolling window of distance samples for local-minimum detection.
  double s_p2 = 0, d_p2 = std::numeric_limits<double>::infinity();
  double s_p1 = 0, d_p1 = std::numeric_limits<double>::infinity();
  bool have2 = false;
  int refines = 0;
  bool done = false;

  auto consider = [&](double sk, double dk) {
    if (have2 && d_p1 <= d_p2 && d_p1 <= dk && s_p1 > opt.min_period &&
        d_p1 < opt.capture_radius && refines < opt.max_refines) {
      ++refines;
      auto dist_on_interp = [&](double s) {
        return quotient_distance(q, pos_at(s), p0);
      };
      const double s_star = golden_min(dist_on_interp, s_p2, sk, 80);
      Vec y_star = exact_state_at(s_star);
      const ChartPoint pe = src.position(y_star);
      const double d_star = quotient_distance(q, pe, p0);
      if (d_star < rep.best_approach) {
        rep.best_approach = d_star;
        rep.best_approach_s = s_star;
      }
      if (d_star < opt.tol_close) {
        check_alignment(q, p0, v0, pe, src.velocity(y_star), rep);
        if (rep.align_residual < opt.tol_align) {
          rep.closed = true;
          rep.period = s_star;
          rep.closure_residual = d_star;
          done = true;
        }
      }
    }
    s_p2 = s_p1;
    d_p2 = d_p1;
    s_p1 = sk;
    d_p1 = dk;
    have2 = true;
  };

  auto on_step = [&](const StepRecord& st) {
    steps.push_back(st);
    if (opt.escape_coord >= 0 &&
        std::abs(st.y1[opt.escape_coord]) > opt.escape_value) {
      rep.escaped = true;
      rep.escape_s = st.s0 + st.h;
      rep.escape_witness = st.y1[opt.escape_coord];
      return false;
    }
    for (int j = 1; j <= 4 && !done; ++j) {
      const double sk = st.s0 + st.h * j / 4;
      const Vec pk = (j == 4) ? Vec(src.position(st.y1)) : pos_at(sk);
      consider(sk, quotient_distance(q, pk, p0));
    }
    return !done;
  };

  OdeResult r = integrate_ode(src.rhs, 0.0, opt.horizon, src.y0, opt.ode,
                              on_step);
  if (!r.ok) {
    rep.ok = false;
    rep.error = r.error;
    return rep;
  }
  fill_length(src, opt, rep);
  return rep;
}

ClosureReport dispatch(const OrbitSource& src, const ChartPoint& p0,
                       const QuotientSpec& q, const ClosureOptions& opt) {
  if (opt.drive_coord >= 0) return drive_detect(src, p0, q, opt);
  return scan_detect(src, p0, q, opt);
}

}  // namespace

ClosureReport detect_closed_orbit(const VectorField& field,
                                  const ChartPoint& p0, const QuotientSpec& q,
                                  const ClosureOptions& opt) {
  OrbitSource src;
  src.dim = (int)p0.size();
  src.y0 = p0;
  src.rhs = [&field](double, const Vec& y) { return field.value(y); };
  src.position = [](const Vec& y) { return y; };
  src.velocity = [&field](const Vec& y) { return field.value(y); };
  src.drive_rate = [&field, &opt](const Vec& y) {
    return field.value(y)[opt.drive_coord];
  };
  return dispatch(src, p0, q, opt);
}

ClosureReport detect_closed_orbit_map(
    const std::function<ChartPoint(const ChartPoint&, double)>& flow_map,
    const VectorField& field, const ChartPoint& p0, const QuotientSpec& q,
    const ClosureOptions& opt) {
  ClosureReport bad;
  if (opt.drive_coord < 0) {
    bad.ok = false;
    bad.error = "exact-map closure detection requires the drive shortcut";
    bad.word = identity_word(q);
    return bad;
  }
  OrbitSource src;
  src.dim = (int)p0.size();
  src.y0 = p0;
  src.position = [](const Vec& y) { return y; };
  src.velocity = [&field](const Vec& y) { return field.value(y); };
  src.drive_rate = [&field, &opt](const Vec& y) {
    return field.value(y)[opt.drive_coord];
  };
  src.exact_eval = [&flow_map, p0](double s) { return flow_map(p0, s); };
  return dispatch(src, p0, q, opt);
}

ClosureReport detect_closed_geodesic(const CoordMetric& metric,
                                     const ChartPoint& p0, const Vec& v0,
                                     const QuotientSpec& q,
                                     const ClosureOptions& opt) {
  const int n = (int)p0.size();
  OrbitSource src;
  src.dim = n;
  src.y0 = Vec(2 * n);
  src.y0.head(n) = p0;
  src.y0.tail(n) = v0;
  src.rhs = [&metric, n](double, const Vec& y) {
    ChartPoint p = y.head(n);
    Vec v = y.tail(n);
    Vec out(2 * n);
    out.head(n) = v;
    out.tail(n) = -geodesic_acceleration(metric, p, v);
    return out;
  };
  src.position = [n](const Vec& y) { return Vec(y.head(n)); };
  src.velocity = [n](const Vec& y) { return Vec(y.tail(n)); };
  src.drive_rate = [n, &opt](const Vec& y) {
    return y.tail(n)[opt.drive_coord];
  };
  return dispatch(src, p0, q, opt);
}

bool loop_is_simple(const std::vector<ChartPoint>& samples,
                    const QuotientSpec& q, double guard_frac, double eps) {
  const long M = (long)samples.size();
  const long guard = (long)std::ceil(guard_frac * (double)M);
  for (long i = 0; i < M; ++i) {
    for (long j = i + 1; j < M; ++j) {
      const long sep = std::min(j - i, M - (j - i));
      if (sep <= guard) continue;
      if (quotient_distance(q, samples[(std::size_t)i],
                            samples[(std::size_t)j]) < eps)
        return false;
    }
  }
  return true;
}

}  // namespace geofol
