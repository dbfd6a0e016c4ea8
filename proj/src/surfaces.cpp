#include "geofol/models/surfaces.hpp"

#include <cmath>
#include <random>

namespace geofol::surfaces {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

double ambient_pair(const EmbeddingSpec& E, const Vec& a, const Vec& b) {
  double s = 0;
  for (int i = 0; i < E.ambient_dim; ++i)
    s += (i < E.nu ? -1.0 : 1.0) * a[i] * b[i];
  return s;
}

Mat pullback_metric(const EmbeddingSpec& E, const ChartPoint& p) {
  const Mat J = E.JF(p);
  const int n = (int)J.cols();
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = ambient_pair(E, J.col(i), J.col(j));
  if (std::abs(g.determinant()) < 1e-12)
    throw std::domain_error("pullback metric rank-deficient");
  return g;
}

SurfaceModel pseudosphere(double r) {
  SurfaceModel m;
  m.kind = "pseudosphere";
  EmbeddingSpec E;
  E.ambient_dim = 3;
  E.nu = 1;
  E.constraint = r * r;
  E.F = [r](const ChartPoint& p) {
    const double w = p[0], th = p[1];
    Vec x(3);
    x << r * std::sinh(w), r * std::cosh(w) * std::cos(th),
        r * std::cosh(w) * std::sin(th);
    return x;
  };
  E.JF = [r](const ChartPoint& p) {
    const double w = p[0], th = p[1];
    Mat J(3, 2);
    J << r * std::cosh(w), 0,                                     //
        r * std::sinh(w) * std::cos(th), -r * std::cosh(w) * std::sin(th),
        r * std::sinh(w) * std::sin(th), r * std::cosh(w) * std::cos(th);
    return J;
  };
  m.embedding = E;

  m.metric.name = "pseudosphere(r=" + std::to_string(r) + ")";
  m.metric.dim = 2;
  m.metric.value = [r](const ChartPoint& p) {
    const double ch = std::cosh(p[0]);
    Mat g(2, 2);
    g << -r * r, 0, 0, r * r * ch * ch;
    return g;
  };
  m.metric.partial = [r](const ChartPoint& p, int i) {
    Mat d = Mat::Zero(2, 2);
    if (i == 0) d(1, 1) = r * r * std::sinh(2.0 * p[0]);
    return d;
  };
  m.quotient = QuotientSpec::torus({0.0, kTwoPi});
  m.box_lo = (Vec(2) << -0.8, 0.0).finished();
  m.box_hi = (Vec(2) << 0.8, kTwoPi).finished();
  m.escape_coord = 0;
  m.escape_value = 12.0;
  return m;
}

SurfaceModel einstein_torus() {
  SurfaceModel m;
  m.kind = "einstein-torus";
  m.metric.name = "einstein-torus";
  m.metric.dim = 2;
  m.metric.value = [](const ChartPoint&) {
    Mat g(2, 2);
    g << 1, 0, 0, -1;
    return g;
  };
  m.metric.partial = [](const ChartPoint&, int) { return Mat(Mat::Zero(2, 2)); };
  m.quotient = QuotientSpec::torus({kTwoPi, kTwoPi});
  m.box_lo = (Vec(2) << 0.0, 0.0).finished();
  m.box_hi = (Vec(2) << kTwoPi, kTwoPi).finished();
  return m;
}

SurfaceModel round_sphere() {
  SurfaceModel m;
  m.kind = "round-sphere";
  EmbeddingSpec E;
  E.ambient_dim = 3;
  E.nu = 0;
  E.constraint = 1.0;
  E.F = [](const ChartPoint& p) {
    const double th = p[0], ph = p[1];
    Vec x(3);
    x << std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
        std::cos(th);
    return x;
  };
  E.JF = [](const ChartPoint& p) {
    const double th = p[0], ph = p[1];
    Mat J(3, 2);
    J << std::cos(th) * std::cos(ph), -std::sin(th) * std::sin(ph),
        std::cos(th) * std::sin(ph), std::sin(th) * std::cos(ph),
        -std::sin(th), 0;
    return J;
  };
  m.embedding = E;
  m.metric.name = "round-sphere";
  m.metric.dim = 2;
  m.metric.value = [](const ChartPoint& p) {
    const double s = std::sin(p[0]);
    Mat g(2, 2);
    g << 1, 0, 0, s * s;
    return g;
  };
  m.metric.partial = [](const ChartPoint& p, int i) {
    Mat d = Mat::Zero(2, 2);
    if (i == 0) d(1, 1) = std::sin(2.0 * p[0]);
    return d;
  };
  m.quotient = QuotientSpec::torus({0.0, kTwoPi});
  m.box_lo = (Vec(2) << 0.6, 0.0).finished();
  m.box_hi = (Vec(2) << kPi - 0.6, kTwoPi).finished();
  return m;
}

SurfaceModel flat_plane() {
  SurfaceModel m;
  m.kind = "flat-plane";
  m.metric.name = "flat-plane";
  m.metric.dim = 2;
  m.metric.value = [](const ChartPoint&) { return Mat(Mat::Identity(2, 2)); };
  m.metric.partial = [](const ChartPoint&, int) { return Mat(Mat::Zero(2, 2)); };
  m.quotient = QuotientSpec::trivial(2);
  m.box_lo = (Vec(2) << -1.0, -1.0).finished();
  m.box_hi = (Vec(2) << 1.0, 1.0).finished();
  return m;
}

SurfaceModel minkowski_plane() {
  SurfaceModel m;
  m.kind = "minkowski-plane";
  m.metric.name = "minkowski-plane";
  m.metric.dim = 2;
  m.metric.value = [](const ChartPoint&) {
    Mat g(2, 2);
    g << 1, 0, 0, -1;
    return g;
  };
  m.metric.partial = [](const ChartPoint&, int) { return Mat(Mat::Zero(2, 2)); };
  m.quotient = QuotientSpec::trivial(2);
  m.box_lo = (Vec(2) << -1.0, -1.0).finished();
  m.box_hi = (Vec(2) << 1.0, 1.0).finished();
  return m;
}

int causal_type(const SurfaceModel& m, const ChartPoint& p, const Vec& v,
                double tol) {
  const double q = v.dot(m.metric.value(p) * v);
  if (std::abs(q) < tol) return 0;
  return q > 0 ? 1 : -1;
}

GeodesicAudit classify_geodesic(const SurfaceModel& m, const ChartPoint& p0,
                                const Vec& v0, double horizon,
                                const OdeOptions& ode, double tol_close) {
  GeodesicAudit a;
  a.p0 = p0;
  a.v0 = v0;
  a.causal = causal_type(m, p0, v0);

  ClosureOptions copt;
  copt.tol_close = tol_close;
  copt.tol_align = std::max(tol_close, 1e-6);
  copt.horizon = horizon;
  copt.ode = ode;
  copt.escape_coord = m.escape_coord;  // coordinate index; state head = chart
  copt.escape_value = m.escape_value;
  const CoordMetric& g = m.metric;
  copt.aux_norm = [&g](const ChartPoint& p, const Vec& v) {
    return std::sqrt(std::abs(v.dot(g.value(p) * v)));
  };
  ClosureReport rep = detect_closed_geodesic(g, p0, v0, m.quotient, copt);
  a.ok = rep.ok;
  a.error = rep.error;
  a.closed = rep.closed;
  a.period = rep.period;
  a.length = rep.length;
  a.closure_residual = rep.closed ? rep.closure_residual : rep.best_approach;

  // Independent pass over the integrated curve for conserved-quantity and
  // escape/embedding witnesses.
  const double span = a.closed ? a.period : (rep.escaped ? rep.escape_s : horizon);
  Trajectory traj = integrate_geodesic(g, p0, v0, span, ode);
  if (!traj.ok) {
    a.ok = false;
    a.error = traj.error;
    return a;
  }
  a.energy_drift = max_energy_drift(traj);
  for (std::size_t i = 0; i < traj.state.size(); ++i) {
    const ChartPoint p = traj.point(i);
    if (m.escape_coord >= 0)
      a.escape_max = std::max(a.escape_max, std::abs(p[m.escape_coord]));
    if (m.embedding) {
      // Relative residual: the indefinite quadratic form cancels terms of
      // size |x|^2, so its roundoff floor scales with them.
      const Vec x = m.embedding->F(p);
      a.embedding_drift =
          std::max(a.embedding_drift,
                   std::abs(ambient_pair(*m.embedding, x, x) -
                            m.embedding->constraint) /
                       (1.0 + x.squaredNorm()));
    }
  }
  if (a.closed) {
    // Simplicity: resample one period uniformly and look for off-parameter
    // coincidences of the position trace.
    const int M = 256;
    std::vector<ChartPoint> samples;
    samples.reserve(M);
    for (int i = 0; i < M; ++i) {
      const double s = a.period * (double)i / M;
      // walk the stored steps
      const StepRecord* st = nullptr;
      for (const auto& rec : traj.steps)
        if (rec.s0 <= s && s <= rec.s0 + rec.h) {
          st = &rec;
          break;
        }
      Vec y = st ? hermite_eval(*st, s)
                 : (s <= 0 ? traj.state.front() : traj.state.back());
      samples.push_back(y.head(2));
    }
    a.simple = loop_is_simple(samples, m.quotient, 0.08, 1e-3);
  }
  return a;
}

std::vector<StateSample> random_unit_states(const SurfaceModel& m, int causal,
                                            int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<StateSample> out;
  out.reserve((std::size_t)count);
  while ((int)out.size() < count) {
    StateSample s;
    s.p = Vec(2);
    for (int i = 0; i < 2; ++i)
      s.p[i] = m.box_lo[i] + (m.box_hi[i] - m.box_lo[i]) * unif(rng);
    const Mat g = m.metric.value(s.p);
    if (causal == 0) {
      // Null directions with first component 1: g00 + 2 g01 b + g11 b^2 = 0.
      const double disc = g(0, 1) * g(0, 1) - g(0, 0) * g(1, 1);
      if (disc < 0) throw std::domain_error("no null directions at sample point");
      const double sq = std::sqrt(disc);
      const double b = (out.size() % 2 == 0) ? (-g(0, 1) + sq) / g(1, 1)
                                             : (-g(0, 1) - sq) / g(1, 1);
      s.v = (Vec(2) << 1.0, b).finished();
    } else {
      const double phi = kTwoPi * unif(rng);
      Vec d(2);
      d << std::cos(phi), std::sin(phi);
      const double q = d.dot(g * d);
      if (causal * q <= 0) continue;  // angle of the wrong causal type; redraw
      s.v = d / std::sqrt(std::abs(q));
    }
    out.push_back(std::move(s));
  }
  return out;
}

ScAuditSummary sc_audit(const SurfaceModel& m, int causal, int count,
                        std::uint64_t seed, double horizon,
                        const OdeOptions& ode, double tol_close) {
  ScAuditSummary sum;
  sum.causal = causal;
  sum.count = count;
  sum.min_escape = std::numeric_limits<double>::infinity();
  bool first_len = true;
  for (const StateSample& s : random_unit_states(m, causal, count, seed)) {
    GeodesicAudit a = classify_geodesic(m, s.p, s.v, horizon, ode, tol_close);
    if (a.closed) {
      ++sum.closed_count;
      if (first_len) {
        sum.min_length = sum.max_length = a.length;
        first_len = false;
      } else {
        sum.min_length = std::min(sum.min_length, a.length);
        sum.max_length = std::max(sum.max_length, a.length);
      }
      sum.all_simple = sum.all_simple && a.simple;
      sum.max_period_err =
          std::max(sum.max_period_err, std::abs(a.period - kTwoPi));
      sum.max_closure_residual =
          std::max(sum.max_closure_residual, a.closure_residual);
    } else {
      sum.min_escape = std::min(sum.min_escape, a.escape_max);
    }
    sum.max_embedding_drift = std::max(sum.max_embedding_drift, a.embedding_drift);
    sum.max_energy_drift = std::max(sum.max_energy_drift, a.energy_drift);
    sum.rows.push_back(std::move(a));
  }
  if (sum.closed_count > 0 && sum.min_length > 0)
    sum.length_dispersion = sum.max_length / sum.min_length - 1.0;
  if (sum.closed_count == count) sum.min_escape = 0;
  return sum;
}

}  // namespace geofol::surfaces
