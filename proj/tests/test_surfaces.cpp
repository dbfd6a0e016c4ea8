#include "doctest.h"

#include "geofol/core/types.hpp"
#include "geofol/models/surfaces.hpp"
#include "geofol/ode/integrate.hpp"

#include <cmath>

using namespace geofol;
using namespace geofol::surfaces;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

ChartPoint pt2(double a, double b) {
  ChartPoint p(2);
  p << a, b;
  return p;
}
}  // namespace

TEST_CASE("hyperboloid chart metric matches its embedding pullback") {
  for (double r : {1.0, 2.0}) {
    SurfaceModel m = pseudosphere(r);
    REQUIRE(m.embedding.has_value());
    for (double w : {-0.9, 0.0, 0.37, 1.2}) {
      ChartPoint p = pt2(w, 0.8);
      Mat closed = m.metric.value(p);
      Mat pulled = pullback_metric(*m.embedding, p);
      CHECK((closed - pulled).cwiseAbs().maxCoeff() < 1e-12);
      // Closed form: diag(-r^2, r^2 cosh^2 w).
      CHECK(closed(0, 0) == doctest::Approx(-r * r).epsilon(1e-14));
      double ch = std::cosh(w);
      CHECK(closed(1, 1) == doctest::Approx(r * r * ch * ch).epsilon(1e-14));
      CHECK(closed(0, 1) == 0.0);
      // The embedded point satisfies the quadric constraint <F,F> = r^2.
      Vec F = m.embedding->F(p);
      CHECK(ambient_pair(*m.embedding, F, F) ==
            doctest::Approx(r * r).epsilon(1e-12));
    }
  }
}

TEST_CASE("frozen pullback values at w = 0.35") {
  // d/dw (sinh, cosh cos th, cosh sin th) at th = 0 pairs to
  // -cosh^2 + sinh^2 = -1; the mixed entry carries cosh * sinh * 0 = 0.
  SurfaceModel m = pseudosphere(1.0);
  ChartPoint p = pt2(0.35, 0.0);
  Mat J = m.embedding->JF(p);
  // dF/dw = (cosh w, sinh w, 0) at theta = 0.
  CHECK(J(0, 0) == doctest::Approx(std::cosh(0.35)).epsilon(1e-14));
  CHECK(J(1, 0) == doctest::Approx(std::sinh(0.35)).epsilon(1e-14));
  CHECK(J(2, 0) == 0.0);
  // <dF/dw, dF/dtheta> uses cosh*sinh = 0.3792918509197667 internally and
  // still cancels to zero in the signed pairing.
  Vec cw = J.col(0), ct = J.col(1);
  CHECK(std::fabs(ambient_pair(*m.embedding, cw, ct)) < 1e-14);
}

TEST_CASE("causal typing distinguishes the three families") {
  SurfaceModel sph = round_sphere();
  Vec v(2);
  v << 0.3, 0.4;
  CHECK(causal_type(sph, pt2(1.0, 0.2), v) == 1);
  SurfaceModel ps = pseudosphere(1.0);
  Vec vt(2);
  vt << 1.0, 0.0;
  CHECK(causal_type(ps, pt2(0.3, 0.2), vt) == -1);
  SurfaceModel tor = einstein_torus();
  Vec null2(2);
  null2 << 1.0, 1.0;
  CHECK(causal_type(tor, pt2(0.0, 0.0), null2) == 0);
}

TEST_CASE("round-sphere equator closes after one great-circle period") {
  SurfaceModel m = round_sphere();
  OdeOptions opt;
  Vec v0(2);
  v0 << 0.0, 1.0;
  GeodesicAudit a = classify_geodesic(m, pt2(kPi / 2, 0.0), v0, 10.0, opt,
                                      1e-6);
  REQUIRE(a.ok);
  CHECK(a.closed);
  CHECK(a.simple);
  CHECK(a.period == doctest::Approx(kTwoPi).epsilon(1e-9));
  CHECK(a.closure_residual < 1e-6);
}

TEST_CASE("flat-torus null line closes after exactly one period") {
  // On dtheta^2 - dphi^2 with both periods 2 pi, the diagonal null geodesic
  // re-enters the start after parameter 2 pi with deck word (1, 1).
  SurfaceModel m = einstein_torus();
  OdeOptions opt;
  Vec v0(2);
  v0 << 1.0, 1.0;
  GeodesicAudit a =
      classify_geodesic(m, pt2(0.3, 0.4), v0, 10.0, opt, 1e-6);
  REQUIRE(a.ok);
  CHECK(a.closed);
  CHECK(a.period == doctest::Approx(kTwoPi).epsilon(1e-6));
  CHECK(a.causal == 0);
  CHECK(a.energy_drift < 1e-10);
}

TEST_CASE("hyperboloid timelike geodesics escape to the ends") {
  // Timelike curves on the one-sheeted hyperboloid run off along w; the
  // audit reports no closure and a large escape coordinate.
  SurfaceModel m = pseudosphere(1.0);
  OdeOptions opt;
  Vec v0(2);
  v0 << 1.0, 0.0;
  GeodesicAudit a =
      classify_geodesic(m, pt2(0.0, 0.7), v0, 30.0, opt, 1e-6);
  REQUIRE(a.ok);
  CHECK(!a.closed);
  CHECK(a.escape_max >= 12.0);
  CHECK(a.embedding_drift < 1e-8);
}

TEST_CASE("hyperboloid central spacelike circle is a closed geodesic") {
  // The waist w = 0 with v = dtheta / r is a unit spacelike closed geodesic
  // of length 2 pi r.
  SurfaceModel m = pseudosphere(1.0);
  OdeOptions opt;
  Vec v0(2);
  v0 << 0.0, 1.0;
  GeodesicAudit a =
      classify_geodesic(m, pt2(0.0, 0.25), v0, 10.0, opt, 1e-6);
  REQUIRE(a.ok);
  CHECK(a.closed);
  CHECK(a.simple);
  CHECK(a.period == doctest::Approx(kTwoPi).epsilon(1e-8));
  CHECK(a.length == doctest::Approx(kTwoPi).epsilon(1e-6));
}

TEST_CASE("random unit states satisfy their causal normalization") {
  SurfaceModel m = pseudosphere(1.0);
  for (int causal : {1, -1, 0}) {
    auto states = random_unit_states(m, causal, 12, 99);
    CHECK(states.size() == 12);
    for (const auto& st : states) {
      double e = (st.v.transpose() * m.metric.value(st.p) * st.v)(0);
      CHECK(std::fabs(e - causal) < 1e-12);
      for (int i = 0; i < 2; ++i) {
        CHECK(st.p[i] >= m.box_lo[i]);
        CHECK(st.p[i] <= m.box_hi[i]);
      }
    }
  }
  // Determinism: the same seed reproduces the same states bit-for-bit.
  auto a = random_unit_states(m, 1, 5, 7);
  auto b = random_unit_states(m, 1, 5, 7);
  for (int i = 0; i < 5; ++i) {
    CHECK((a[i].p - b[i].p).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a[i].v - b[i].v).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("spacelike audit on the hyperboloid finds only closed circles") {
  SurfaceModel m = pseudosphere(1.0);
  OdeOptions opt;
  ScAuditSummary s = sc_audit(m, 1, 4, 123, 30.0, opt, 1e-6);
  CHECK(s.count == 4);
  CHECK(s.closed_count == 4);
  CHECK(s.all_simple);
  CHECK(s.length_dispersion < 1e-3);
  CHECK(s.max_closure_residual < 1e-6);
  CHECK(s.max_embedding_drift < 1e-8);
  CHECK(static_cast<int>(s.rows.size()) == 4);
}
