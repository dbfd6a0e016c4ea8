#include "doctest.h"

#include "geofol/core/types.hpp"
#include "geofol/models/cutoff.hpp"
#include "geofol/models/thurston.hpp"
#include "geofol/ode/integrate.hpp"
#include "geofol/ode/quotient.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

using namespace geofol;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

ChartPoint pt(double x, double y, double z, double t, double u) {
  ChartPoint p(5);
  p << x, y, z, t, u;
  return p;
}

Eigen::Matrix<long, 5, 1> word5(long a, long b, long c, long kt, long ku) {
  Eigen::Matrix<long, 5, 1> w;
  w << a, b, c, kt, ku;
  return w;
}
}  // namespace

TEST_CASE("closed-form k-flow matches hand values at a quarter turn") {
  // From (0,0,0,0,pi/4) with k = 1 for s = pi/2:
  //   x = sin(pi/2) - sin 0 = 1, y = cos 0 - cos(pi/2) = 1, t = pi/2,
  //   z = (sin 0 - sin pi)/4 + 0 + 0 = 0 (up to roundoff in the closed form).
  ChartPoint p0 = pt(0, 0, 0, 0, kPi / 4);
  ChartPoint q = thurston::exact_flow_k(1.0, p0, kPi / 2);
  CHECK(q[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::fabs(q[2]) < 1e-15);
  CHECK(q[3] == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(q[4] == kPi / 4);
}

TEST_CASE("closed-form flow closes exactly after one period") {
  // The t-phase is reduced with remainder(), so s = 2 pi returns the x, y, z
  // coordinates bit-for-bit and advances t by exactly 2 pi.
  ChartPoint p0 = pt(0.37, -0.81, 2.2, 1.234, 0.7);
  ChartPoint q = thurston::exact_flow_k(3.7, p0, kTwoPi);
  CHECK(q[0] == p0[0]);
  CHECK(q[1] == p0[1]);
  CHECK(q[2] == p0[2]);
  CHECK(q[3] == p0[3] + kTwoPi);
  CHECK(q[4] == p0[4]);
}

TEST_CASE("closed-form W flow matches the numerical integrator") {
  VectorField w = thurston::W();
  ChartPoint p0 = pt(0.3, 0.45, 0.2, 1.7, 0.9);
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-13;
  const double s = 1.3;
  Trajectory tr = integrate_flow(w, p0, s, opt);
  REQUIRE(tr.ok);
  ChartPoint num = tr.point(static_cast<int>(tr.s.size()) - 1);
  ChartPoint exact = thurston::exact_flow_w(p0, s);
  CHECK((num - exact).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("closed-form W flow rejects the degenerate locus") {
  CHECK_THROWS_AS((void)thurston::exact_flow_w(pt(0, 0, 0, 0, 0), 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(
      (void)thurston::exact_flow_wf(xi_cutoff(), pt(0, 0, 0, 0, 0), 1.0),
      std::domain_error);
}

TEST_CASE("X is the 2 sin^2(u) multiple of W") {
  VectorField X = thurston::X();
  VectorField W = thurston::W();
  CutoffPair xi = xi_cutoff();
  VectorField Xf = thurston::Xf(xi);
  VectorField Wf = thurston::Wf(xi);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    double u = 0.4 + 0.8 * std::fabs(U(rng));
    ChartPoint p = pt(U(rng), U(rng), U(rng), 3.0 * U(rng), u);
    double su = std::sin(u);
    Vec dx = X.value(p) - 2.0 * su * su * W.value(p);
    CHECK(dx.cwiseAbs().maxCoeff() < 1e-12);
    double f = xi.f(u);
    Vec dxf = Xf.value(p) - 2.0 * f * f * Wf.value(p);
    CHECK(dxf.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("transverse regularizing field has the closed-form components") {
  // Y = -cos^2(u) dt + 2 f(u) |f|(u) du
  CutoffPair xi = xi_cutoff();
  VectorField Y = thurston::Yfield(xi);
  for (double u : {0.3, 1.0, 2.0, kPi - 0.3}) {
    ChartPoint p = pt(0.1, 0.2, 0.3, 0.4, u);
    Vec y = Y.value(p);
    double c = std::cos(u);
    CHECK(y[3] == doctest::Approx(-c * c).epsilon(1e-15));
    CHECK(y[4] ==
          doctest::Approx(2.0 * xi.f(u) * xi.fabs(u)).epsilon(1e-15));
    CHECK(std::fabs(y[0]) + std::fabs(y[1]) + std::fabs(y[2]) == 0.0);
  }
}

TEST_CASE("deck words act through the nilpotent group law") {
  QuotientSpec q = QuotientSpec::heisenberg_torus();
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<long> Z(-3, 3);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int rep = 0; rep < 30; ++rep) {
    Word w1(5), w2(5);
    for (int i = 0; i < 5; ++i) {
      w1[i] = Z(rng);
      w2[i] = Z(rng);
    }
    ChartPoint p = pt(U(rng), U(rng), U(rng), U(rng), U(rng));
    // Homomorphism: act(compose(w1,w2), p) == act(w1, act(w2, p))
    ChartPoint lhs = act(q, compose(q, w1, w2), p);
    ChartPoint rhs = act(q, w1, act(q, w2, p));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    // Inverse: act(inverse(w1), act(w1, p)) == p
    ChartPoint back = act(q, inverse(q, w1), act(q, w1, p));
    CHECK((back - p).cwiseAbs().maxCoeff() < 1e-12);
    // Identity word composes neutrally (integer arithmetic: exact).
    Word e = identity_word(q);
    CHECK(compose(q, w1, e) == w1);
    CHECK(compose(q, e, w1) == w1);
  }
}

TEST_CASE("deck action transports velocities by its differential") {
  QuotientSpec q = QuotientSpec::heisenberg_torus();
  Word w = word5(2, 0, 0, 1, 0);
  ChartPoint p = pt(0.3, 0.4, 0.5, 0.6, 0.7);
  Vec v(5);
  v << 0.1, -0.2, 0.3, 0.4, -0.5;
  Vec tv = act_diff(q, w, p, v);
  // Only vz changes: vz + a*vy = 0.3 + 2*(-0.2) = -0.1.
  CHECK(tv[0] == v[0]);
  CHECK(tv[1] == v[1]);
  CHECK(tv[2] == doctest::Approx(-0.1).epsilon(1e-15));
  CHECK(tv[3] == v[3]);
  CHECK(tv[4] == v[4]);
  // Same action exposed on the model side.
  ChartPoint moved = thurston::lattice_act(w, p);
  CHECK((moved - act(q, w, p)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((thurston::lattice_act_diff(w, v) - tv).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reduction lands in the fundamental domain with the right word") {
  QuotientSpec q = QuotientSpec::heisenberg_torus();
  // z = 2.7 with x, y already reduced: word (0,0,-2,0,0), rep z = 0.7.
  Reduced r1 = reduce(q, pt(0.5, 0.3, 2.7, 0.2, 0.1));
  CHECK(r1.word == word5(0, 0, -2, 0, 0));
  CHECK(r1.rep[2] == doctest::Approx(0.7).epsilon(1e-14));
  // x = 1.5: shifting x by -1 adds (-1)*y to z, so the z-word compensates.
  Reduced r2 = reduce(q, pt(1.5, 0.3, 0.0, 0.2, 0.1));
  CHECK(r2.word == word5(-1, 0, 1, 0, 0));
  CHECK(r2.rep[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r2.rep[1] == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(r2.rep[2] == doctest::Approx(0.7).epsilon(1e-14));
  // In all cases rep == act(word, p) and coordinates lie in [0,1) x [0,2pi).
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-8.0, 8.0);
  for (int rep = 0; rep < 30; ++rep) {
    ChartPoint p = pt(U(rng), U(rng), U(rng), U(rng), U(rng));
    Reduced r = reduce(q, p);
    CHECK((r.rep - act(q, r.word, p)).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < 3; ++i) {
      CHECK(r.rep[i] >= 0.0);
      CHECK(r.rep[i] < 1.0);
    }
    for (int i = 3; i < 5; ++i) {
      CHECK(r.rep[i] >= 0.0);
      CHECK(r.rep[i] < kTwoPi);
    }
  }
}

TEST_CASE("quotient distance vanishes exactly on an orbit") {
  QuotientSpec q = QuotientSpec::heisenberg_torus();
  ChartPoint p = pt(0.31, 0.77, 0.12, 1.9, 4.0);
  CHECK(quotient_distance(q, p, p) == 0.0);
  ChartPoint moved = act(q, word5(1, -2, 3, 1, -1), p);
  CHECK(quotient_distance(q, p, moved) < 1e-12);
  // A genuinely different class has positive distance.
  ChartPoint other = pt(0.31, 0.77, 0.42, 1.9, 4.0);
  CHECK(quotient_distance(q, p, other) > 0.1);
}

TEST_CASE("matching word recovers the deck translate near closure") {
  QuotientSpec q = QuotientSpec::heisenberg_torus();
  ChartPoint from = pt(0.31, 0.77, 0.12, 1.9, 4.0);
  Word w = word5(0, 1, -1, 1, 0);
  ChartPoint to = act(q, w, from);
  to[0] += 3e-9;  // slightly off closure, as detectors produce
  Word got = matching_word(q, from, to);
  CHECK(got == w);
  CHECK((act(q, got, from) - to).cwiseAbs().maxCoeff() < 1e-8);
}
