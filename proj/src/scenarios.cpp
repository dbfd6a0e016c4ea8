#include "geofol/cli/scenarios.hpp"

#include "geofol/conn/christoffel.hpp"
#include "geofol/conn/koszul.hpp"
#include "geofol/core/types.hpp"
#include "geofol/models/cutoff.hpp"
#include "geofol/models/lightlike.hpp"
#include "geofol/models/riemannize.hpp"
#include "geofol/models/sasaki.hpp"
#include "geofol/models/surfaces.hpp"
#include "geofol/models/thurston.hpp"
#include "geofol/models/typechange.hpp"
#include "geofol/ode/closure.hpp"
#include "geofol/ode/integrate.hpp"
#include "geofol/ode/quotient.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <utility>

namespace geofol::cli {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::mt19937_64 make_rng(const Config& cfg, std::uint64_t tag) {
  return std::mt19937_64((cfg.seed + 0x9E3779B97F4A7C15ull) ^
                         (tag * 0xBF58476D1CE4E5B9ull));
}

double unif(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Random chart point in the fundamental domain with a prescribed u.
ChartPoint chart5(std::mt19937_64& rng, double u) {
  ChartPoint p(5);
  p << unif(rng, 0, 1), unif(rng, 0, 1), unif(rng, 0, 1), unif(rng, 0, kTwoPi),
      u;
  return p;
}

ChartPoint fixed5(double u) {
  ChartPoint p(5);
  p << 0.3, 0.45, 0.2, 1.7, u;
  return p;
}

OdeOptions ode_options(const Config& cfg) {
  OdeOptions o;
  o.rtol = cfg.rtol;
  o.atol = cfg.atol;
  o.h_max = cfg.h_max;
  o.max_steps = cfg.max_steps;
  return o;
}

double rel_err(const Vec& got, const Vec& want) {
  return (got - want).norm() / std::max(1.0, want.norm());
}

// Wrapped distance from u to the degenerate set {0, pi} mod 2 pi.
double degenerate_depth(double u) {
  double uw = std::fmod(u, kTwoPi);
  if (uw < 0) uw += kTwoPi;
  return std::min({uw, std::fabs(uw - kPi), kTwoPi - uw});
}

typechange::Params params_for(const Config& cfg, const CutoffPair& c) {
  if (cfg.eta > 0) {
    typechange::Params P;
    P.cutoff = c;
    P.eta = cfg.eta;
    P.zone = cfg.eta / 2;
    P.band_end = 0.95 * cfg.eta;
    P.u_switch = 0.98 * P.zone;
    return P;
  }
  return typechange::make_params(c, cfg.eta_cap, cfg.min_eig, cfg.grid_n);
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "s",  "x",  "y",  "z",  "t",  "u",
      "vx", "vy", "vz", "vt", "vu", "g_vv"};
  return cols;
}

// --- shared type-change audit helpers -------------------------------------
// These run on a ModelSet; the mutation battery reuses them on seeded
// defects, so they must not assume the metric is correct.

// Max |C^T G0 C - branch Gram| on the chart-overlap windows, where the
// columns of C express the orthogonal frame (W, V1, V2, dz, Y) in the base
// frame (dt, V1, V2, dz, du).  Valid where the branch block is still the
// exact splitting Gram (depth <= zone).
double overlap_gram_error(const typechange::ModelSet& ms, int pts) {
  const typechange::Params& P = ms.P;
  const CutoffPair& cp = P.cutoff;
  const double lo = std::max(P.u_switch, P.zone - 0.15);
  const double hi = P.zone;
  double worst = 0;
  for (int w = 0; w < 4; ++w) {
    for (int i = 0; i < pts; ++i) {
      double v = pts > 1 ? lo + (hi - lo) * i / (pts - 1) : hi;
      double u = w == 0   ? v
                 : w == 1 ? kPi - v
                 : w == 2 ? kPi + v
                          : kTwoPi - v;
      double f = cp.f(u), fa = cp.fabs(u), c = std::cos(u);
      double k = c / f;
      Mat C = Mat::Identity(5, 5);
      C(1, 0) = k;
      C(3, 0) = -0.5 * k * k;
      C(0, 4) = -c * c;
      C(4, 4) = 2 * f * fa;
      Mat lhs = C.transpose() * typechange::G0(P, u) * C;
      const MetricModel& br = (w <= 1) ? ms.g1 : ms.g2;
      Mat rhs = br.gram(fixed5(u));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

// Coordinate metrics of the near-degenerate chart and the branch chart must
// agree on the overlap (continuity of the assembled metric at the switch).
double overlap_coord_error(const typechange::ModelSet& ms, int pts) {
  const typechange::Params& P = ms.P;
  const double lo = std::max(P.u_switch, P.zone - 0.15);
  const double hi = P.zone;
  double worst = 0;
  for (int w = 0; w < 4; ++w) {
    for (int i = 0; i < pts; ++i) {
      double v = pts > 1 ? lo + (hi - lo) * i / (pts - 1) : hi;
      double u = w == 0   ? v
                 : w == 1 ? kPi - v
                 : w == 2 ? kPi + v
                          : kTwoPi - v;
      ChartPoint p = fixed5(u);
      const MetricModel& br = (w <= 1) ? ms.g1 : ms.g2;
      Mat a = coordinate_gram(ms.g0, p);
      Mat b = coordinate_gram(br, p);
      worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

struct GxxAudit {
  double max_err = 0;      // |g(X,X) - 4 f^3 fabs| over the grid
  int sign_violations = 0; // causal-character pattern of g(X,X)
};

// Grid audit of g(X,X) through the assembled branch metrics.  The sign rule
// is the flat-profile one (positive where sin u > 0, negative where
// sin u < 0, sampled at depth >= 0.35 where 4 f^4 stays above the ~1e-17
// evaluation noise) unless sin_rule is set, in which case g >= -1e-12
// everywhere is required.
GxxAudit gxx_grid_audit(const typechange::ModelSet& ms, const CutoffPair& cp,
                        bool sin_rule, int n) {
  GxxAudit out;
  VectorField Xv = thurston::Xf(cp);
  for (int i = 0; i <= n; ++i) {
    double u = -kPi + kTwoPi * i / n;
    ChartPoint p = fixed5(u);
    Vec x = Xv.value(p);
    double g = metric_pair(ms.branch(u), x, x, p);
    double f = cp.f(u);
    double want = 4 * f * f * f * cp.fabs(u);
    out.max_err = std::max(out.max_err, std::fabs(g - want));
    if (sin_rule) {
      if (g < -1e-12) ++out.sign_violations;
    } else if (degenerate_depth(u) >= 0.35) {
      double s = std::sin(u);
      if (s > 0 ? g <= 0 : g >= 0) ++out.sign_violations;
    }
  }
  return out;
}

// Max ||nabla_X X|| over sampled points, evaluated without ever
// differentiating a singular frame: in base-frame coefficients through G0
// near the degenerate set (X has no du component, so constant-coefficient
// Koszul applies), and as 4 f^4 ||nabla_W W|| in the orthogonal frame
// elsewhere (X = 2 f^2 W with f constant along W).
double residual_x_max(const typechange::ModelSet& ms, const CutoffPair& cp,
                      std::mt19937_64& rng, int n, bool g0_region_only) {
  const typechange::Params& P = ms.P;
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    double u;
    if (g0_region_only) {
      double center = (i % 2 == 0) ? 0.0 : kPi;
      u = center + unif(rng, -0.9 * P.u_switch, 0.9 * P.u_switch);
    } else if (i % 10 == 8) {
      u = 0.0;
    } else if (i % 10 == 9) {
      u = kPi;
    } else {
      u = unif(rng, 0, kTwoPi);
    }
    ChartPoint p = chart5(rng, u);
    double f = cp.f(u), c = std::cos(u);
    double r;
    if (ms.branch_index(u) == 0) {
      Vec a(5);
      a << 2 * f * f, 2 * f * c, 0, -c * c, 0;
      r = covariant_deriv(ms.g0, a, a, p).norm();
    } else {
      Vec e0 = Vec::Zero(5);
      e0[0] = 1;
      double f4 = f * f * f * f;
      r = 4 * f4 * covariant_deriv(ms.branch(u), e0, e0, p).norm();
    }
    worst = std::max(worst, r);
  }
  return worst;
}

// One-sided first derivatives of the branch Gram on both sides of every
// transition seam, Richardson-extrapolated; returns the worst relative
// mismatch.  v parametrizes depth; each seam neighbourhood maps v to u.
double seam_c1_error(const typechange::ModelSet& ms) {
  const typechange::Params& P = ms.P;
  auto gram_v = [&](int which, double v) -> Mat {
    double u = which == 0   ? v
               : which == 1 ? kPi - v
               : which == 2 ? kPi + v
                            : kTwoPi - v;
    const MetricModel& br = which <= 1 ? ms.g1 : ms.g2;
    return br.gram(fixed5(u));
  };
  auto deriv = [&](int which, double v0, double dir) -> Mat {
    auto D = [&](double h) -> Mat {
      return (-3.0 * gram_v(which, v0) + 4.0 * gram_v(which, v0 + dir * h) -
              gram_v(which, v0 + 2 * dir * h)) /
             (2 * dir * h);
    };
    Mat d1 = D(1e-3), d2 = D(5e-4);
    return (4.0 * d2 - d1) / 3.0;
  };
  double worst = 0;
  for (int which = 0; which < 4; ++which) {
    for (double v0 : {P.zone, P.band_end}) {
      Mat below = deriv(which, v0, -1.0);
      Mat above = deriv(which, v0, +1.0);
      double scale = std::max({1.0, below.cwiseAbs().maxCoeff(),
                               above.cwiseAbs().maxCoeff()});
      worst = std::max(worst, (below - above).cwiseAbs().maxCoeff() / scale);
    }
  }
  return worst;
}

// Assembled coordinate metric: branch-dispatched value AND partial, so that
// derivative-based operators never difference across the branch switch.
CoordMetric assembled_coord_metric(std::shared_ptr<typechange::ModelSet> ms) {
  auto cms = std::make_shared<std::array<CoordMetric, 3>>();
  (*cms)[0] = to_coord_metric(ms->g0);
  (*cms)[1] = to_coord_metric(ms->g1);
  (*cms)[2] = to_coord_metric(ms->g2);
  CoordMetric cm;
  cm.name = "typechange_assembled";
  cm.dim = 5;
  cm.value = [ms, cms](const ChartPoint& p) {
    return (*cms)[ms->branch_index(p[thurston::kU])].value(p);
  };
  cm.partial = [ms, cms](const ChartPoint& p, int i) {
    return (*cms)[ms->branch_index(p[thurston::kU])].partial(p, i);
  };
  return cm;
}

// Coordinate-frame wrapper: lets the Koszul path run against a CoordMetric
// with the constant coordinate frame (zero structure constants).
MetricModel from_coord(const CoordMetric& cm) {
  MetricModel m;
  m.name = cm.name + "_frame";
  m.frame.dim = cm.dim;
  m.frame.name = "coordinate";
  for (int i = 0; i < cm.dim; ++i) {
    Vec e = Vec::Zero(cm.dim);
    e[i] = 1;
    m.frame.fields.push_back(
        constant_field(cm.dim, "e" + std::to_string(i), e));
  }
  m.gram = cm.value;
  if (cm.partial) {
    auto part = cm.partial;
    m.gram_coord_partial = [part](const ChartPoint& p, int i) {
      return part(p, i);
    };
  }
  int dim = cm.dim;
  m.structure = [dim](const ChartPoint&, int, int) {
    return Vec(Vec::Zero(dim));
  };
  return m;
}

// Linear combination of frame fields with constant coefficients (analytic
// Jacobian assembled from the members').
VectorField frame_combo(const FrameSpec& frame, const Vec& coeffs,
                        const std::string& name) {
  auto fields = std::make_shared<std::vector<VectorField>>(frame.fields);
  auto c = std::make_shared<Vec>(coeffs);
  int dim = frame.dim;
  VectorField f;
  f.dim = dim;
  f.name = name;
  f.value = [fields, c, dim](const ChartPoint& p) {
    Vec v = Vec::Zero(dim);
    for (std::size_t i = 0; i < fields->size(); ++i)
      v += (*c)[static_cast<int>(i)] * (*fields)[i].value(p);
    return v;
  };
  f.jacobian = [fields, c, dim](const ChartPoint& p) {
    Mat J = Mat::Zero(dim, dim);
    for (std::size_t i = 0; i < fields->size(); ++i)
      J += (*c)[static_cast<int>(i)] * (*fields)[i].jacobian(p);
    return J;
  };
  return f;
}

void guarded(Report& rep, const std::string& suite,
             const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    rep.notes.push_back(suite + " aborted: " + e.what());
    rep.add(check_true(suite + ".completed",
                       "suite ran to completion without construction errors",
                       false));
  }
}

}  // namespace

// --- frame bracket table ---------------------------------------------------

void suite_bracket_table(const Config& cfg, Report& rep) {
  const double ts = cfg.tol_scale;
  const CutoffPair& cp = xi_cutoff();
  VectorField Wv = thurston::Wf(cp);
  VectorField V1 = thurston::V1();
  VectorField V2 = thurston::V2();
  VectorField Dz = thurston::coord(thurston::kZ);
  VectorField Yv = thurston::Yfield(cp);
  std::mt19937_64 rng = make_rng(cfg, 0x10);
  double e0 = 0, e1 = 0, e2 = 0, e3 = 0;
  // Window where the frame ratio k = cos u / f(u) stays below ~5e3, so the
  // exact k-term cancellations inside the brackets stay well above roundoff.
  for (int i = 0; i < cfg.bracket_points; ++i) {
    double u = unif(rng, 0.35, kPi - 0.35);
    ChartPoint p = chart5(rng, u);
    double f = cp.f(u), fa = cp.fabs(u), df = cp.df(u);
    double c = std::cos(u), s = std::sin(u);
    Vec v1 = V1.value(p), v2 = V2.value(p), dz = Dz.value(p);
    e0 = std::max(e0, rel_err(lie_bracket(Wv, V1, p), v2));
    e1 = std::max(e1,
                  rel_err(lie_bracket(Wv, V2, p), Vec((c / f) * dz - v1)));
    e2 = std::max(e2, rel_err(lie_bracket(Wv, Dz, p), Vec(Vec::Zero(5))));
    double sfcf = s * f + c * df;
    Vec want = (2 * fa * sfcf / f) * v1 + (c * c * c / f) * v2 -
               (2 * c * fa * sfcf / (f * f)) * dz;
    e3 = std::max(e3, rel_err(lie_bracket(Wv, Yv, p), want));
  }
  rep.add(check_le("brackets.w_v1", "bracket [W,V1] = V2", e0, 1e-8 * ts));
  rep.add(check_le("brackets.w_v2", "bracket [W,V2] = (cos u / f) dz - V1", e1,
                   1e-8 * ts));
  rep.add(check_le("brackets.w_dz", "bracket [W,dz] = 0", e2, 1e-8 * ts));
  rep.add(check_le("brackets.w_y",
                   "bracket [W,Y] lands in span{V1,V2,dz} with the derived "
                   "coefficients",
                   e3, 1e-8 * ts));
}

// --- lightlike metric -------------------------------------------------------

void suite_lightlike(const Config& cfg, Report& rep) {
  const double ts = cfg.tol_scale;
  MetricModel m = lightlike::model();
  VectorField Xv = thurston::X();
  std::mt19937_64 rng = make_rng(cfg, 0x20);

  Mat G = m.gram(fixed5(1.0));
  rep.add(check_le("lightlike.gxx_frame",
                   "g(X,X) = 0 exactly (frame Gram entry)", std::fabs(G(0, 0)),
                   0.0));

  Vec e0 = Vec::Zero(5);
  e0[0] = 1;
  Vec eu = Vec::Zero(5);
  eu[4] = 1;
  double flat_err = 0, pair_err = 0, resid = 0;
  for (int i = 0; i < cfg.residual_points; ++i) {
    ChartPoint p = chart5(rng, unif(rng, 0, kTwoPi));
    flat_err = std::max(
        flat_err, (lightlike::x_flat(p) - eu).cwiseAbs().maxCoeff());
    Vec x = Xv.value(p);
    pair_err = std::max(pair_err, std::fabs(metric_pair(m, x, x, p)));
    resid = std::max(resid, covariant_deriv(m, e0, e0, p).norm());
  }
  double dmax = 0;
  const int nd = std::min(100, cfg.residual_points);
  for (int i = 0; i < nd; ++i) {
    ChartPoint p = chart5(rng, unif(rng, 0, kTwoPi));
    dmax = std::max(dmax, lightlike::x_flat_exterior_derivative_max(p, 1e-4));
  }
  rep.add(check_le("lightlike.gxx_pair",
                   "g(X,X) = 0 through the coordinate pairing", pair_err,
                   1e-12 * ts));
  rep.add(check_le("lightlike.x_flat",
                   "X-flat equals the du coordinate covector", flat_err,
                   1e-12 * ts));
  rep.add(check_le("lightlike.x_flat_closed",
                   "d(X-flat) = 0 (the X covector is closed)", dmax,
                   1e-8 * ts));
  rep.add(check_le("lightlike.geodesic_residual",
                   "nabla_X X = 0 (X geodesic for the lightlike metric)",
                   resid, 1e-7 * ts));
}

// --- type-changing metric ----------------------------------------------------

void suite_typechange(const Config& cfg, Report& rep, bool sin_variant) {
  const double ts = cfg.tol_scale;
  const std::string pfx = sin_variant ? "sin." : "typechange.";
  const CutoffPair& cp = sin_variant ? sin_cutoff() : xi_cutoff();
  const double resid_tol = (sin_variant ? 1e-7 : 1e-6) * ts;

  std::optional<typechange::ModelSet> msopt;
  try {
    msopt.emplace(typechange::make_models(params_for(cfg, cp)));
  } catch (const std::exception& e) {
    rep.notes.push_back(pfx + "construction failed: " + e.what());
    rep.add(check_true(
        pfx + "construction",
        "interpolated metric construction certified (signature and "
        "factor-sign audits)",
        false));
    return;
  }
  const typechange::ModelSet& ms = *msopt;
  const typechange::Params& P = ms.P;
  rep.add(check_true(pfx + "construction",
                     "interpolated metric construction certified (signature "
                     "and factor-sign audits)",
                     true));
  rep.fp(pfx + "eta", P.eta);
  rep.fp(pfx + "zone", P.zone);
  rep.fp(pfx + "band_end", P.band_end);
  rep.fp(pfx + "u_switch", P.u_switch);

  std::mt19937_64 rng = make_rng(cfg, sin_variant ? 0x31 : 0x30);

  // Signature (3,2) everywhere, via the branch frame Grams (Sylvester).
  int bad_sig = 0;
  for (int i = 0; i < cfg.signature_points; ++i) {
    double u = unif(rng, 0, kTwoPi);
    ChartPoint p = chart5(rng, u);
    SignatureTriple sig = signature(ms.branch(u).gram(p));
    if (!(sig.plus == 3 && sig.minus == 2 && sig.zero == 0)) ++bad_sig;
  }
  rep.add(check_count(pfx + "signature",
                      "metric signature is (3,2) at every sampled point",
                      bad_sig, 0));

  // g(X,X) identity, causal sign pattern and exact zeros.
  GxxAudit gx = gxx_grid_audit(ms, cp, sin_variant, cfg.grid_points);
  rep.add(check_le(pfx + "gxx_identity",
                   "g(X,X) = 4 f(u)^3 fabs(u) on the u-grid", gx.max_err,
                   1e-12 * ts));
  rep.add(check_count(
      pfx + "gxx_sign",
      sin_variant
          ? "g(X,X) = 4 sin^4(u) is nonnegative (no timelike half)"
          : "g(X,X) is timelike for sin u < 0 and spacelike for sin u > 0",
      gx.sign_violations, 0));
  double z0 = std::fabs(typechange::g_xx(P, 0.0));
  double zpi = sin_variant ? 0.0 : std::fabs(typechange::g_xx(P, kPi));
  rep.add(check_le(pfx + "gxx_degenerate",
                   "g(X,X) = 0 exactly on the degenerate circles",
                   std::max(z0, zpi), 0.0));

  // Unit W and orthogonality of X to the complementary frame, sampled in the
  // branch region where the orthogonal frame is the active chart.
  VectorField Wv = thurston::Wf(cp);
  VectorField Xv = thurston::Xf(cp);
  std::vector<VectorField> comp;
  comp.push_back(thurston::V1());
  comp.push_back(thurston::V2());
  comp.push_back(thurston::coord(thurston::kZ));
  comp.push_back(thurston::Yfield(cp));
  double ww_err = 0, ortho_err = 0;
  for (int i = 0; i < cfg.residual_points; ++i) {
    bool upper = (i % 2 == 0);
    double lo = P.u_switch + 1e-6;
    double u = unif(rng, lo, kPi - lo);
    if (!upper) u += kPi;
    ChartPoint p = chart5(rng, u);
    const MetricModel& br = ms.branch(u);
    Vec w = Wv.value(p);
    double g = metric_pair(br, w, w, p);
    double want = sin_variant ? 1.0 : (upper ? 1.0 : -1.0);
    ww_err = std::max(ww_err, std::fabs(g - want));
    Vec x = Xv.value(p);
    for (const auto& F : comp)
      ortho_err =
          std::max(ortho_err, std::fabs(metric_pair(br, x, F.value(p), p)));
  }
  rep.add(check_le(pfx + "gww_unit",
                   "g(W,W) = fabs/f (unit length, sign by half-interval)",
                   ww_err, 1e-10 * ts));
  rep.add(check_le(pfx + "x_orthogonal", "X is orthogonal to V1, V2, dz, Y",
                   ortho_err, 1e-10 * ts));

  // Geodesic residual of X, including the degenerate circles themselves.
  double rx = residual_x_max(ms, cp, rng, cfg.residual_points, false);
  rep.add(check_le(pfx + "geodesic_residual",
                   "nabla_X X = 0 (X is geodesic for the assembled metric)",
                   rx, resid_tol));

  // Chart overlap: Gram congruence and coordinate-metric agreement.
  rep.add(check_le(pfx + "overlap_gram",
                   "conjugated near-degenerate Gram equals the branch Gram "
                   "on the overlap",
                   overlap_gram_error(ms, 21), 1e-12 * ts));
  rep.add(check_le(pfx + "overlap_coord",
                   "assembled coordinate metric is continuous across the "
                   "branch switch",
                   overlap_coord_error(ms, 21), 1e-7 * ts));

  // C^1 seams of the interpolated block.
  rep.add(check_le(pfx + "seam_c1",
                   "transition seams match one-sided first derivatives",
                   seam_c1_error(ms), 1e-6 * ts));
}

// --- divergence --------------------------------------------------------------

void suite_divergence(const Config& cfg, Report& rep) {
  const double ts = cfg.tol_scale;
  const CutoffPair& cp = xi_cutoff();
  auto ms = std::make_shared<typechange::ModelSet>(
      typechange::make_models(params_for(cfg, cp)));
  CoordMetric cm = assembled_coord_metric(ms);
  VectorField Xv = thurston::Xf(cp);
  std::mt19937_64 rng = make_rng(cfg, 0x40);
  double worst = 0, diff = 0;
  for (int i = 0; i < cfg.residual_points; ++i) {
    double u;
    do {
      u = unif(rng, 0, kTwoPi);
    } while (std::fabs(degenerate_depth(u) - ms->P.u_switch) < 1e-3);
    ChartPoint p = chart5(rng, u);
    double dv = divergence_volume(cm, Xv, p);
    double dt = divergence_trace(cm, Xv, p);
    worst = std::max({worst, std::fabs(dv), std::fabs(dt)});
    diff = std::max(diff, std::fabs(dv - dt));
  }
  rep.add(check_le("divergence.zero",
                   "div X = 0 for the assembled metric (volume-form and "
                   "trace paths)",
                   worst, 1e-8 * ts));
  rep.add(check_le("divergence.paths_agree",
                   "volume-form and Christoffel-trace divergences agree",
                   diff, 1e-9 * ts));
}

// --- closed-form flow oracle --------------------------------------------------

void suite_exact_flow(const Config& cfg, Report& rep) {
  const double ts = cfg.tol_scale;
  std::mt19937_64 rng = make_rng(cfg, 0x50);
  VectorField Wv = thurston::W();
  QuotientSpec Q = QuotientSpec::heisenberg_torus();
  OdeOptions ode = ode_options(cfg);
  double sup = 0, id_err = 0;
  for (int j = 0; j < cfg.flow_starts; ++j) {
    double u0 = unif(rng, 0.7, kPi - 0.7);
    ChartPoint p0 = chart5(rng, u0);
    Trajectory traj = integrate_flow(Wv, p0, kTwoPi, ode);
    if (!traj.ok) {
      rep.notes.push_back("flow integration failed: " + traj.error);
      sup = kInf;
      break;
    }
    for (std::size_t i = 0; i < traj.s.size(); ++i) {
      ChartPoint q = thurston::exact_flow_w(p0, traj.s[i]);
      sup = std::max(sup, (traj.state[i] - q).cwiseAbs().maxCoeff());
    }
    id_err = std::max(
        id_err, quotient_distance(Q, thurston::exact_flow_w(p0, kTwoPi), p0));
  }
  rep.add(check_le("flow.integrator_vs_exact",
                   "integrated flow of W matches the closed-form flow", sup,
                   1e-8 * ts));
  rep.add(check_le("flow.period_identity",
                   "closed-form flow satisfies phi_{2 pi} = id on the "
                   "quotient",
                   id_err, 1e-10 * ts));
}

// --- W-orbit closure and unbounded length --------------------------------------

void suite_unbounded_length(const Config& cfg, Report& rep) {
  const double ts = cfg.tol_scale;
  std::mt19937_64 rng = make_rng(cfg, 0x60);
  VectorField Wv = thurston::W();
  QuotientSpec Q = QuotientSpec::heisenberg_torus();
  const std::array<double, 4> u0s = {0.3, 0.7, 1.0, 1.5};
  Table tab{"w_orbits",
            {"u0", "period", "length", "normalized", "residual"},
            {}};
  int closed = 0;
  double resid = 0, nmin = kInf, nmax = 0, nsum = 0;
  std::vector<double> lengths;
  for (double u0 : u0s) {
    ChartPoint p0 = chart5(rng, u0);
    ClosureOptions opt;
    opt.tol_close = cfg.tol_close * ts;
    opt.tol_align = cfg.tol_align * ts;
    opt.horizon = cfg.horizon;
    opt.ode = ode_options(cfg);
    opt.drive_coord = thurston::kT;
    opt.drive_period = kTwoPi;
    opt.max_drive_returns = 2;
    opt.aux_norm = [](const ChartPoint& p, const Vec& v) {
      double s = std::sin(p[thurston::kU]);
      return std::fabs(v[thurston::kT]) / (2 * s * s);
    };
    ClosureReport cr = detect_closed_orbit(Wv, p0, Q, opt);
    double s2 = std::sin(u0) * std::sin(u0);
    double normalized = cr.length * s2;
    if (cr.closed) ++closed;
    resid = std::max(resid, cr.closure_residual);
    lengths.push_back(cr.length);
    nmin = std::min(nmin, normalized);
    nmax = std::max(nmax, normalized);
    nsum += normalized;
    tab.rows.push_back({format_double(u0), format_double(cr.period),
                        format_double(cr.length), format_double(normalized),
                        format_double(cr.closure_residual)});
  }
  rep.tables.push_back(tab);
  rep.add(check_count("orbits.closed", "W-orbits close at every sampled u0",
                      closed, static_cast<long>(u0s.size())));
  rep.add(check_le("orbits.residual", "W-orbit closure residual", resid,
                   1e-6 * ts));
  rep.add(check_le("orbits.normalized_constant",
                   "length * sin^2(u0) is constant across the foliation",
                   nmax / nmin - 1, 1e-3 * ts));
  int mono_bad = 0;  // u0s ascend, so lengths must strictly descend
  for (std::size_t i = 1; i < lengths.size(); ++i)
    if (!(lengths[i] < lengths[i - 1])) ++mono_bad;
  rep.add(check_count("orbits.unbounded",
                      "orbit length grows without bound toward the "
                      "degenerate set",
                      mono_bad, 0));
  double C = nsum / static_cast<double>(u0s.size());
  rep.fp("orbits.normalized_mean", C);
  rep.add(check_le("orbits.constant_value",
                   "normalized length matches the leafwise constant "
                   "(pi or 2 pi depending on normalization)",
                   std::min(std::fabs(C - kPi), std::fabs(C - kTwoPi)),
                   1e-3 * kPi * ts));
  rep.notes.push_back(
      "The numeric value of the leafwise length constant is recorded in "
      "fingerprint 'orbits.normalized_mean' rather than assumed.");
}

// --- deformed-profile leaf sweep -----------------------------------------------

void suite_leaf_sweep(const Config& cfg, Report& rep,
                      const std::filesystem::path* out_dir) {
  const double ts = cfg.tol_scale;
  const CutoffPair& cp = xi_cutoff();
  VectorField Wx = thurston::Wf(cp);
  QuotientSpec Q = QuotientSpec::heisenberg_torus();
  std::mt19937_64 rng = make_rng(cfg, 0x61);
  Table tab{
      "xi_leaf_sweep",
      {"u0", "k", "period", "length", "normalized", "residual", "exact_map"},
      {}};
  int rows = 0, closed = 0;
  double resid = 0, norm_err = 0;
  std::vector<std::pair<double, double>> mono;  // (u0, length), u0 <= pi/2
  for (double u0 : cfg.sweep_u0) {
    double f0 = cp.f(u0);
    if (f0 == 0) {
      rep.notes.push_back(
          "leaf sweep: skipped a u0 on the degenerate set (W undefined)");
      continue;
    }
    ++rows;
    double k = std::cos(u0) / f0;
    bool use_map = std::fabs(k) > 500.0;
    ChartPoint p0 = chart5(rng, u0);
    ClosureOptions opt;
    opt.tol_close = cfg.tol_close * ts;
    opt.tol_align = cfg.tol_align * ts;
    opt.horizon = cfg.horizon;
    opt.ode = ode_options(cfg);
    if (!use_map) {
      opt.ode.rtol = std::min(opt.ode.rtol, 1e-12);
      opt.ode.atol = std::min(opt.ode.atol, 1e-12);
    }
    opt.drive_coord = thurston::kT;
    opt.drive_period = kTwoPi;
    opt.max_drive_returns = use_map ? 1 : 2;
    opt.aux_norm = [&cp](const ChartPoint& p, const Vec& v) {
      double fu = cp.f(p[thurston::kU]);
      return std::fabs(v[thurston::kT]) / (2 * fu * fu);
    };
    ClosureReport cr =
        use_map ? detect_closed_orbit_map(
                      [&cp](const ChartPoint& q, double s) {
                        return thurston::exact_flow_wf(cp, q, s);
                      },
                      Wx, p0, Q, opt)
                : detect_closed_orbit(Wx, p0, Q, opt);
    double normalized = cr.length * 2 * f0 * f0;
    if (cr.closed) ++closed;
    resid = std::max(resid, cr.closure_residual);
    norm_err = std::max(norm_err, std::fabs(normalized - kTwoPi));
    if (u0 < kPi / 2 + 1e-12) mono.emplace_back(u0, cr.length);
    tab.rows.push_back({format_double(u0), format_double(k),
                        format_double(cr.period), format_double(cr.length),
                        format_double(normalized),
                        format_double(cr.closure_residual),
                        use_map ? "1" : "0"});
    if (out_dir != nullptr && cfg.write_csv && cr.closed) {
      std::vector<std::vector<double>> crows;
      auto push_row = [&](double s, const ChartPoint& p, const Vec& v) {
        double fu = cp.f(p[thurston::kU]);
        double gvv = (cp.fabs(p[thurston::kU]) / fu) * v[thurston::kT] *
                     v[thurston::kT];
        crows.push_back(
            {s, p[0], p[1], p[2], p[3], p[4], v[0], v[1], v[2], v[3], v[4],
             gvv});
      };
      if (use_map) {
        const int nsamp = 512;
        for (int j = 0; j <= nsamp; ++j) {
          double s = cr.period * j / nsamp;
          ChartPoint p = thurston::exact_flow_wf(cp, p0, s);
          push_row(s, p, Wx.value(p));
        }
      } else {
        Trajectory traj = integrate_flow(Wx, p0, cr.period, opt.ode);
        for (std::size_t j = 0; j < traj.s.size(); ++j) {
          ChartPoint p = traj.point(j);
          push_row(traj.s[j], p, Wx.value(p));
        }
      }
      std::ostringstream nm;
      nm << "orbit_u0_" << format_double(u0) << ".csv";
      write_csv(*out_dir / nm.str(), csv_columns(), crows);
    }
  }
  rep.tables.push_back(tab);
  rep.add(check_count("sweep.closed",
                      "every deformed leaf closes after one drive period",
                      closed, rows));
  rep.add(check_le("sweep.residual", "deformed-leaf closure residual", resid,
                   1e-6 * ts));
  rep.add(check_le("sweep.normalized",
                   "length * 2 f(u0)^2 = 2 pi across the sweep", norm_err,
                   1e-3 * kTwoPi * ts));
  std::sort(mono.begin(), mono.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  int mono_bad = 0;
  for (std::size_t i = 1; i < mono.size(); ++i)
    if (!(mono[i].second > mono[i - 1].second)) ++mono_bad;
  rep.add(check_count("sweep.monotone",
                      "leaf length grows without bound as u0 approaches the "
                      "degenerate set",
                      mono_bad, 0));

  // The degenerate circle itself: a closed leaf traversed by -dz, closing
  // under one unit z-translation of the lattice.
  Vec mdz = Vec::Zero(5);
  mdz[thurston::kZ] = -1;
  VectorField Fz = constant_field(5, "minus_dz", mdz);
  ChartPoint pb(5);
  pb << 0.3, 0.55, 0.7, 1.2, 0.0;
  ClosureOptions ob;
  ob.tol_close = cfg.tol_close * ts;
  ob.tol_align = cfg.tol_align * ts;
  ob.horizon = cfg.horizon;
  ob.ode = ode_options(cfg);
  ob.drive_coord = thurston::kZ;
  ob.drive_period = 1.0;
  ob.max_drive_returns = 2;
  ob.aux_norm = [](const ChartPoint&, const Vec& v) { return v.norm(); };
  ClosureReport cb = detect_closed_orbit(Fz, pb, Q, ob);
  bool word_ok = cb.closed && cb.word.size() == 5 && cb.word(0) == 0 &&
                 cb.word(1) == 0 && std::labs(cb.word(2)) == 1 &&
                 cb.word(3) == 0 && cb.word(4) == 0;
  rep.add(check_true("sweep.bad_set_closed",
                     "the degenerate-set circle closes under one lattice "
                     "z-translation with unit period",
                     word_ok && std::fabs(cb.period - 1.0) <= 1e-9));
  rep.fp("sweep.bad_set_period", cb.period);
  if (out_dir != nullptr && cfg.write_csv && cb.closed) {
    std::vector<std::vector<double>> crows;
    double gvv = std::pow(cp.f(0.0), 4);  // Gram entry for dz at u = 0
    const int nsamp = 64;
    for (int j = 0; j <= nsamp; ++j) {
      double s = cb.period * j / nsamp;
      ChartPoint p = pb;
      p[thurston::kZ] -= s;
      crows.push_back({s, p[0], p[1], p[2], p[3], p[4], 0, 0, -1, 0, 0, gvv});
    }
    write_csv(*out_dir / "orbit_bad_set.csv", csv_columns(), crows);
  }
}

// --- tangent-bundle lift -------------------------------------------------------

void suite_sasaki(const Config& cfg, Report& rep) {
  const double ts = cfg.tol_scale;
  surfaces::SurfaceModel m = surfaces::pseudosphere(1.0);
  const CoordMetric& base = m.metric;
  OdeOptions ode = ode_options(cfg);
  double resid = 0, emis = 0;
  bool all_ok = true;
  const std::array<int, 3> causals = {1, -1, 0};
  for (std::size_t idx = 0; idx < causals.size(); ++idx) {
    auto states = surfaces::random_unit_states(
        m, causals[idx], cfg.geodesics_per_type, cfg.seed + 0x70 + idx);
    for (const auto& st : states) {
      Trajectory traj = integrate_geodesic(base, st.p, st.v, 4.0, ode);
      if (!traj.ok) {
        rep.notes.push_back("base geodesic integration failed: " + traj.error);
        all_ok = false;
        continue;
      }
      auto lc = tangent_lift_check(base, traj, 25);
      resid = std::max(resid, lc.max_residual);
      emis = std::max(emis, lc.max_energy_mismatch);
    }
  }
  rep.add(check_true("sasaki.bases_integrated",
                     "all base geodesics integrated to the lift horizon",
                     all_ok));
  rep.add(check_le("sasaki.lift_geodesic",
                   "tangent lifts of base geodesics are geodesics of the "
                   "lifted metric",
                   resid, 1e-5 * ts));
  rep.add(check_le("sasaki.lift_energy",
                   "lift preserves the causal character (energy match)", emis,
                   1e-10 * ts));

  std::mt19937_64 rng = make_rng(cfg, 0x71);
  double push = 0, vert = 0, ortho = 0, assem = 0;
  for (int i = 0; i < 10; ++i) {
    ChartPoint x(2);
    x << unif(rng, -0.8, 0.8), unif(rng, 0, kTwoPi);
    Vec v(2);
    v << unif(rng, -1, 1), unif(rng, -1, 1);
    auto sc = sasaki_split_checks(base, x, v);
    push = std::max(push, sc.horizontal_push_err);
    vert = std::max(vert, sc.vertical_err);
    ortho = std::max(ortho, sc.ortho_err);
    assem = std::max(assem, sc.assembly_err);
  }
  rep.add(check_le("sasaki.horizontal",
                   "horizontal lifts carry the base metric", push,
                   1e-10 * ts));
  rep.add(check_le("sasaki.vertical", "vertical vectors carry the base metric",
                   vert, 1e-10 * ts));
  rep.add(check_le("sasaki.orthogonal",
                   "horizontal and vertical subspaces are orthogonal", ortho,
                   1e-10 * ts));
  rep.add(check_le("sasaki.assembly",
                   "blockwise and operator-form assemblies agree", assem,
                   1e-10 * ts));
}

// --- Riemannization --------------------------------------------------------------

void suite_riemannize(const Config& cfg, Report& rep) {
  const double ts = cfg.tol_scale;
  std::mt19937_64 rng = make_rng(cfg, 0x80);
  CoordMetric h0;
  h0.name = "aux_identity";
  h0.dim = 2;
  h0.value = [](const ChartPoint&) { return Mat(Mat::Identity(2, 2)); };
  h0.partial = [](const ChartPoint&, int) { return Mat(Mat::Zero(2, 2)); };

  double min_eig = kInf, worst_resid = 0;
  auto run_case = [&](const surfaces::SurfaceModel& m, double c0, double c1,
                      const char* nm) {
    Vec dir(2);
    dir << c0, c1;
    VectorField Xv = constant_field(2, nm, dir);
    CoordMetric h = riemannize(m.metric, Xv, h0);
    for (int i = 0; i < 66; ++i) {
      ChartPoint p(2);
      p << unif(rng, m.box_lo[0], m.box_hi[0]),
          unif(rng, m.box_lo[1], m.box_hi[1]);
      Mat H = h.value(p);
      Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (H + H.transpose()));
      min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
      worst_resid = std::max(worst_resid, geodesic_residual_coord(h, Xv, p));
    }
  };
  run_case(surfaces::minkowski_plane(), 1, 0, "unit_time_direction");
  run_case(surfaces::einstein_torus(), 1, 0, "unit_theta_direction");
  run_case(surfaces::pseudosphere(1.0), 1, 0, "unit_w_direction");
  rep.fp("riemannize.min_eigenvalue", min_eig);
  rep.add(check_ge("riemannize.positive_definite",
                   "rebuilt metric is positive definite (min eigenvalue "
                   "above floor)",
                   min_eig, 1e-9));
  rep.add(check_le("riemannize.foliation_geodesic",
                   "foliation field stays geodesic after the Riemannian "
                   "rebuild",
                   worst_resid, 1e-7 * ts));

  ChartPoint probe(2);
  probe << 0.1, 0.2;
  bool rejected_null = false;
  try {
    Vec d(2);
    d << 1, 1;
    CoordMetric bad = riemannize(surfaces::einstein_torus().metric,
                                 constant_field(2, "null_diagonal", d), h0);
    (void)bad.value(probe);
  } catch (const std::domain_error&) {
    rejected_null = true;
  }
  rep.add(check_true("riemannize.lightlike_rejected",
                     "lightlike foliation directions are rejected",
                     rejected_null));
  bool rejected_nonunit = false;
  try {
    Vec d(2);
    d << 2, 0;
    CoordMetric bad = riemannize(surfaces::einstein_torus().metric,
                                 constant_field(2, "double_speed", d), h0);
    (void)bad.value(probe);
  } catch (const std::invalid_argument&) {
    rejected_nonunit = true;
  }
  rep.add(check_true("riemannize.nonunit_rejected",
                     "non-unit foliation fields are rejected",
                     rejected_nonunit));
}

// --- surface geodesic audits ------------------------------------------------------

void suite_surfaces(const Config& cfg, Report& rep) {
  const double ts = cfg.tol_scale;
  OdeOptions ode = ode_options(cfg);
  const double horizon = 30.0;
  surfaces::SurfaceModel ps = surfaces::pseudosphere(1.0);
  auto sp = surfaces::sc_audit(ps, +1, cfg.surface_samples, cfg.seed + 0xA1,
                               horizon, ode, cfg.tol_close * ts);
  auto tl = surfaces::sc_audit(ps, -1, cfg.surface_samples, cfg.seed + 0xB1,
                               horizon, ode, cfg.tol_close * ts);
  auto et = surfaces::sc_audit(surfaces::einstein_torus(), 0,
                               cfg.surface_samples, cfg.seed + 0xC1, horizon,
                               ode, cfg.tol_close * ts);

  rep.add(check_count("surfaces.spacelike_closed",
                      "every spacelike unit geodesic on the unit hyperboloid "
                      "closes",
                      sp.closed_count, sp.count));
  rep.add(check_true("surfaces.spacelike_simple",
                     "closed spacelike geodesics are simple loops",
                     sp.all_simple));
  rep.add(check_le("surfaces.spacelike_dispersion",
                   "closed spacelike geodesics share a common length",
                   sp.closed_count > 0 ? sp.length_dispersion : kInf,
                   1e-3 * ts));
  rep.add(check_le("surfaces.spacelike_residual",
                   "spacelike closure residual", sp.max_closure_residual,
                   1e-6 * ts));
  rep.fp("surfaces.spacelike_min_length", sp.min_length);
  rep.fp("surfaces.spacelike_max_length", sp.max_length);
  rep.notes.push_back(
      "Common spacelike length on the unit hyperboloid is recorded in the "
      "fingerprint (observed ~ 2 pi r); the asserted facts are closure, "
      "simplicity and dispersion.");

  rep.add(check_count("surfaces.timelike_open",
                      "no timelike geodesic on the hyperboloid closes",
                      tl.closed_count, 0));
  rep.add(check_ge("surfaces.timelike_escape",
                   "every timelike geodesic escapes past |w| = 10",
                   tl.min_escape, 10.0));

  rep.add(check_count("surfaces.torus_null_closed",
                      "every null geodesic on the product torus closes",
                      et.closed_count, et.count));
  rep.add(check_le("surfaces.torus_period",
                   "null geodesic period on the torus equals 2 pi",
                   et.max_period_err, 1e-6 * ts));

  rep.add(check_le("surfaces.embedding_drift",
                   "hyperboloid geodesics stay on the embedded surface",
                   std::max(sp.max_embedding_drift, tl.max_embedding_drift),
                   1e-8 * ts));
  rep.add(check_le(
      "surfaces.energy_drift", "g(v,v) conserved along surface geodesics",
      std::max({sp.max_energy_drift, tl.max_energy_drift,
                et.max_energy_drift}),
      100 * cfg.rtol * ts));

  Table tab{"surface_audits",
            {"kind", "causal", "count", "closed", "min_length", "max_length",
             "min_escape"},
            {}};
  auto add_row = [&](const char* kind, const surfaces::ScAuditSummary& s) {
    tab.rows.push_back({kind, format_double(s.causal),
                        format_double(s.count), format_double(s.closed_count),
                        format_double(s.min_length),
                        format_double(s.max_length),
                        format_double(s.min_escape)});
  };
  add_row("pseudosphere_spacelike", sp);
  add_row("pseudosphere_timelike", tl);
  add_row("einstein_torus_null", et);
  rep.tables.push_back(tab);
}

// --- connection cross-paths ---------------------------------------------------------

void suite_cross_paths(const Config& cfg, Report& rep) {
  const double ts = cfg.tol_scale;
  std::mt19937_64 rng = make_rng(cfg, 0x95);

  struct CrossCase {
    std::string name;
    MetricModel model;
    CoordMetric coord;
    std::function<ChartPoint(std::mt19937_64&)> sample;
  };
  std::vector<CrossCase> cases;

  auto add_5d = [&](const std::string& nm, const MetricModel& m,
                    std::function<double(std::mt19937_64&)> draw_u) {
    CrossCase c;
    c.name = nm;
    c.model = m;
    c.coord = to_coord_metric(m);
    c.sample = [draw_u](std::mt19937_64& r) { return chart5(r, draw_u(r)); };
    cases.push_back(std::move(c));
  };
  auto add_surface = [&](const surfaces::SurfaceModel& m) {
    CrossCase c;
    c.name = m.kind;
    c.model = from_coord(m.metric);
    c.coord = m.metric;
    Vec lo = m.box_lo, hi = m.box_hi;
    c.sample = [lo, hi](std::mt19937_64& r) {
      ChartPoint p(2);
      p << unif(r, lo[0], hi[0]), unif(r, lo[1], hi[1]);
      return p;
    };
    cases.push_back(std::move(c));
  };

  add_5d("lightlike", lightlike::model(), [](std::mt19937_64& r) {
    return unif(r, 0, kTwoPi);
  });
  for (bool sin_variant : {false, true}) {
    const CutoffPair& cp = sin_variant ? sin_cutoff() : xi_cutoff();
    std::string tag = sin_variant ? "sin" : "xi";
    auto ms = std::make_shared<typechange::ModelSet>(
        typechange::make_models(params_for(cfg, cp)));
    double eta = ms->P.eta, us = ms->P.u_switch;
    add_5d(tag + "_near_degenerate", ms->g0, [eta](std::mt19937_64& r) {
      double center = unif(r, 0, 1) < 0.5 ? 0.0 : kPi;
      return center + unif(r, -0.6 * eta, 0.6 * eta);
    });
    add_5d(tag + "_branch_upper", ms->g1, [us](std::mt19937_64& r) {
      return unif(r, us + 0.01, kPi - us - 0.01);
    });
    add_5d(tag + "_branch_lower", ms->g2, [us](std::mt19937_64& r) {
      return kPi + unif(r, us + 0.01, kPi - us - 0.01);
    });
  }
  add_surface(surfaces::pseudosphere(1.0));
  add_surface(surfaces::einstein_torus());
  add_surface(surfaces::round_sphere());
  add_surface(surfaces::flat_plane());
  add_surface(surfaces::minkowski_plane());

  double worst = 0;
  for (const auto& cs : cases) {
    double case_worst = 0;
    int dim = cs.model.frame.dim;
    for (int i = 0; i < cfg.christoffel_inputs; ++i) {
      ChartPoint p = cs.sample(rng);
      Vec a(dim), b(dim);
      for (int j = 0; j < dim; ++j) {
        a[j] = unif(rng, -1, 1);
        b[j] = unif(rng, -1, 1);
      }
      Vec k = covariant_deriv(cs.model, a, b, p);
      VectorField A = frame_combo(cs.model.frame, a, "combo_a");
      VectorField B = frame_combo(cs.model.frame, b, "combo_b");
      Vec c = covariant_deriv_coord(cs.coord, A, B, p);
      double rel =
          (k - c).norm() / std::max({1.0, k.norm(), c.norm()});
      case_worst = std::max(case_worst, rel);
    }
    rep.fp("cross." + cs.name, case_worst);
    worst = std::max(worst, case_worst);
  }
  rep.add(check_le("cross.connection_paths",
                   "moving-frame Koszul and coordinate Christoffel "
                   "derivatives agree",
                   worst, 1e-8 * ts));

  // Energy conservation along integrated geodesics (surfaces and the
  // assembled type-changing metric).
  OdeOptions ode = ode_options(cfg);
  double drift = 0;
  bool integrations_ok = true;
  auto drift_surface = [&](const surfaces::SurfaceModel& m, int causal,
                           std::uint64_t tag, double horizon) {
    auto states = surfaces::random_unit_states(m, causal, 2, cfg.seed + tag);
    for (const auto& st : states) {
      Trajectory traj = integrate_geodesic(m.metric, st.p, st.v, horizon, ode);
      if (!traj.ok) {
        integrations_ok = false;
        rep.notes.push_back("energy-drift integration failed on " + m.kind +
                            ": " + traj.error);
        continue;
      }
      drift = std::max(drift, max_energy_drift(traj));
    }
  };
  drift_surface(surfaces::pseudosphere(1.0), +1, 0xD1, 10.0);
  drift_surface(surfaces::pseudosphere(1.0), -1, 0xD2, 10.0);
  drift_surface(surfaces::einstein_torus(), +1, 0xD3, 10.0);
  // Short arc: the polar chart of the sphere is singular at theta = 0, pi,
  // and a longer geodesic from the sampling box can run into a pole.
  drift_surface(surfaces::round_sphere(), +1, 0xD4, 0.45);
  drift_surface(surfaces::flat_plane(), +1, 0xD5, 10.0);
  drift_surface(surfaces::minkowski_plane(), -1, 0xD6, 10.0);

  // Short arcs with small velocities: geodesics of an indefinite metric can
  // blow up in finite parameter time, and this check targets integrator
  // energy drift, not completeness.
  auto msx = std::make_shared<typechange::ModelSet>(
      typechange::make_models(params_for(cfg, xi_cutoff())));
  CoordMetric cm = assembled_coord_metric(msx);
  for (int i = 0; i < 2; ++i) {
    ChartPoint p = chart5(rng, kPi / 2 + (i == 0 ? 0.3 : -0.3));
    Vec v(5);
    for (int j = 0; j < 5; ++j) v[j] = unif(rng, -0.25, 0.25);
    Trajectory traj = integrate_geodesic(cm, p, v, 0.75, ode);
    if (!traj.ok) {
      integrations_ok = false;
      rep.notes.push_back(
          "energy-drift integration failed on the assembled metric: " +
          traj.error);
      continue;
    }
    drift = std::max(drift, max_energy_drift(traj));
  }
  rep.add(check_true("cross.integrations",
                     "all energy-drift geodesics integrated to their horizon",
                     integrations_ok));
  rep.add(check_le("cross.energy_drift",
                   "g(v,v) conserved along integrated geodesics", drift,
                   100 * cfg.rtol * ts));
}

// --- seeded-defect battery ------------------------------------------------------------

void suite_mutations(const Config& cfg, Report& rep) {
  const CutoffPair& cp = xi_cutoff();
  typechange::Params P0;
  try {
    P0 = params_for(cfg, cp);
  } catch (const std::exception& e) {
    rep.notes.push_back(std::string("mutation battery: baseline failed: ") +
                        e.what());
    rep.add(check_true("mutations.baseline",
                       "baseline construction available for the battery",
                       false));
    return;
  }
  int detected = 0;
  const int total = 7;
  Table tab{"mutation_battery",
            {"mutation", "overlap_err", "gxx_err", "sign_violations",
             "residual", "detected"},
            {}};
  const std::array<std::pair<int, int>, 6> flips = {
      {{0, 1}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {3, 4}}};
  for (const auto& [fi, fj] : flips) {
    typechange::Params Pm = P0;
    Pm.mut_i = fi;
    Pm.mut_j = fj;
    double ov = kInf, gerr = kInf, res = kInf;
    double sv = 0;
    bool det = true;
    try {
      typechange::ModelSet ms = typechange::make_models(Pm);
      ov = overlap_gram_error(ms, 9);
      GxxAudit ga = gxx_grid_audit(ms, cp, false, 80);
      gerr = ga.max_err;
      sv = ga.sign_violations;
      std::mt19937_64 r2 = make_rng(cfg, 0x900 + fi * 8 + fj);
      res = residual_x_max(ms, cp, r2, 60, true);
      det = ov > 1e-10 || gerr > 1e-10 || sv > 0 || res > 1e-5;
    } catch (const std::exception&) {
      det = true;  // construction audit fired
    }
    if (det) ++detected;
    std::ostringstream nm;
    nm << "flip_g0_" << fi << fj;
    tab.rows.push_back({nm.str(), format_double(ov), format_double(gerr),
                        format_double(sv), format_double(res),
                        det ? "1" : "0"});
  }
  {
    // Profile swap: replace the sign-carrying cutoff by u^2, which destroys
    // the causal sign pattern of g(X,X) on the lower half-interval.
    bool det = true;
    double sv = 0;
    try {
      CutoffPair usq{"usq", [](double u) { return u * u; },
                     [](double u) { return u * u; },
                     [](double u) { return 2 * u; },
                     [](double u) { return 2 * u; }};
      typechange::Params Pm =
          typechange::make_params(usq, cfg.eta_cap, cfg.min_eig, cfg.grid_n);
      typechange::ModelSet ms = typechange::make_models(Pm);
      GxxAudit ga = gxx_grid_audit(ms, usq, false, 80);
      sv = ga.sign_violations;
      det = ga.sign_violations > 0;
    } catch (const std::exception&) {
      det = true;
    }
    if (det) ++detected;
    tab.rows.push_back({"cutoff_usq", "nan", "nan", format_double(sv), "nan",
                        det ? "1" : "0"});
  }
  rep.tables.push_back(tab);
  rep.add(check_count("mutations.detected",
                      "every seeded defect trips at least one verification "
                      "check",
                      detected, total));
}

// --- dispatch -------------------------------------------------------------------------

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "verify-lightlike", "verify-typechange", "verify-typechange-sin",
      "orbit-sweep",      "sasaki-check",      "surface-audit",
      "riemannize-check", "all"};
  return names;
}

Report run_scenario(const std::string& name, const Config& cfg,
                    const std::filesystem::path* out_dir) {
  Report rep;
  rep.scenario = name;
  rep.seed = cfg.seed;
  rep.tol_scale = cfg.tol_scale;
  bool all = (name == "all");
  bool known = all;
  if (all || name == "verify-lightlike") {
    guarded(rep, "lightlike", [&] { suite_lightlike(cfg, rep); });
    known = true;
  }
  if (all || name == "verify-typechange") {
    guarded(rep, "brackets", [&] { suite_bracket_table(cfg, rep); });
    guarded(rep, "typechange", [&] { suite_typechange(cfg, rep, false); });
    guarded(rep, "divergence", [&] { suite_divergence(cfg, rep); });
    known = true;
  }
  if (all || name == "verify-typechange-sin") {
    guarded(rep, "sin", [&] { suite_typechange(cfg, rep, true); });
    known = true;
  }
  if (all || name == "orbit-sweep") {
    guarded(rep, "flow", [&] { suite_exact_flow(cfg, rep); });
    guarded(rep, "orbits", [&] { suite_unbounded_length(cfg, rep); });
    guarded(rep, "sweep", [&] { suite_leaf_sweep(cfg, rep, out_dir); });
    known = true;
  }
  if (all || name == "sasaki-check") {
    guarded(rep, "sasaki", [&] { suite_sasaki(cfg, rep); });
    known = true;
  }
  if (all || name == "surface-audit") {
    guarded(rep, "surfaces", [&] { suite_surfaces(cfg, rep); });
    known = true;
  }
  if (all || name == "riemannize-check") {
    guarded(rep, "riemannize", [&] { suite_riemannize(cfg, rep); });
    known = true;
  }
  if (all) {
    guarded(rep, "cross", [&] { suite_cross_paths(cfg, rep); });
    guarded(rep, "mutations", [&] { suite_mutations(cfg, rep); });
  }
  if (!known) {
    std::string msg = "unknown scenario '" + name + "' (expected one of";
    for (const auto& n : scenario_names()) msg += " " + n;
    msg += ")";
    throw std::invalid_argument(msg);
  }
  return rep;
}

}  // namespace geofol::cli
