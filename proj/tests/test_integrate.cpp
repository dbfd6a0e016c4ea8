#include "doctest.h"

#include "geofol/core/types.hpp"
#include "geofol/ode/integrate.hpp"
#include "geofol/ode/rk.hpp"
#include "geofol/models/surfaces.hpp"

#include <cmath>

using namespace geofol;
using geofol::surfaces::SurfaceModel;

namespace {
constexpr double kPi = 3.14159265358979323846;

ChartPoint pt2(double a, double b) {
  ChartPoint p(2);
  p << a, b;
  return p;
}
}  // namespace

TEST_CASE("fixed-step RK4 converges at fourth order on y' = y") {
  auto f = [](double, const Vec& y) { return Vec(y); };
  Vec y0 = Vec::Ones(1);
  auto solve = [&](double h) {
    OdeOptions opt;
    opt.fixed_rk4 = true;
    opt.fixed_h = h;
    OdeResult r = integrate_ode(f, 0.0, 1.0, y0, opt);
    REQUIRE(r.ok);
    return std::fabs(r.y_end[0] - std::exp(1.0));
  };
  double e1 = solve(0.02);
  double e2 = solve(0.01);
  double ratio = e1 / e2;
  // Fourth order: halving h divides the error by ~16.
  CHECK(ratio > 12.0);
  CHECK(ratio < 20.0);
}

TEST_CASE("adaptive integrator hits its tolerance on y' = y") {
  auto f = [](double, const Vec& y) { return Vec(y); };
  Vec y0 = Vec::Ones(1);
  OdeOptions opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-12;
  OdeResult r = integrate_ode(f, 0.0, 1.0, y0, opt);
  REQUIRE(r.ok);
  CHECK(std::fabs(r.y_end[0] - std::exp(1.0)) < 1e-8);
}

TEST_CASE("Hermite dense output reconstructs sine between steps") {
  // y = (sin s, cos s) solves y0' = y1, y1' = -y0.
  auto f = [](double, const Vec& y) {
    Vec d(2);
    d << y[1], -y[0];
    return d;
  };
  Vec y0(2);
  y0 << 0.0, 1.0;
  OdeOptions opt;
  opt.rtol = 1e-10;
  opt.atol = 1e-12;
  std::vector<StepRecord> steps;
  auto rec = [&](const StepRecord& st) {
    steps.push_back(st);
    return true;
  };
  OdeResult r = integrate_ode(f, 0.0, 3.0, y0, opt, rec);
  REQUIRE(r.ok);
  REQUIRE(steps.size() > 3);
  double worst = 0.0;
  for (const auto& st : steps) {
    for (double frac : {0.25, 0.5, 0.75}) {
      double s = st.s0 + frac * st.h;
      Vec y = hermite_eval(st, s);
      worst = std::max(worst, std::fabs(y[0] - std::sin(s)));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("flat-plane geodesics are straight lines") {
  SurfaceModel m = surfaces::flat_plane();
  ChartPoint p0 = pt2(0.2, -0.4);
  Vec v0(2);
  v0 << 0.3, 0.7;
  OdeOptions opt;
  Trajectory tr = integrate_geodesic(m.metric, p0, v0, 5.0, opt);
  REQUIRE(tr.ok);
  REQUIRE(tr.is_geodesic);
  Vec end = tr.point(static_cast<int>(tr.s.size()) - 1);
  CHECK((end - (p0 + 5.0 * v0)).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((tr.velocity(static_cast<int>(tr.s.size()) - 1) - v0)
            .cwiseAbs()
            .maxCoeff() < 1e-10);
}

TEST_CASE("arc length of the unit-speed circular flow is 2 pi") {
  VectorField rot;
  rot.dim = 2;
  rot.name = "rot";
  rot.value = [](const ChartPoint& p) {
    Vec v(2);
    v << -p[1], p[0];
    return v;
  };
  rot.jacobian = [](const ChartPoint&) {
    Mat j = Mat::Zero(2, 2);
    j(0, 1) = -1.0;
    j(1, 0) = 1.0;
    return j;
  };
  OdeOptions opt;
  Trajectory tr = integrate_flow(rot, pt2(1.0, 0.0), 2.0 * kPi, opt);
  REQUIRE(tr.ok);
  Vec end = tr.point(static_cast<int>(tr.s.size()) - 1);
  CHECK((end - pt2(1.0, 0.0)).cwiseAbs().maxCoeff() < 1e-8);
  double len = arc_length(tr, [](const ChartPoint&, const Vec& v) {
    return v.norm();
  });
  CHECK(len == doctest::Approx(2.0 * kPi).epsilon(1e-8));
}

TEST_CASE("energy is conserved along a sphere great circle") {
  SurfaceModel m = surfaces::round_sphere();
  ChartPoint p0 = pt2(kPi / 2, 0.0);
  Vec v0(2);
  v0 << 0.0, 1.0;
  OdeOptions opt;
  Trajectory tr = integrate_geodesic(m.metric, p0, v0, 6.0, opt);
  REQUIRE(tr.ok);
  CHECK(max_energy_drift(tr) < 1e-8);
  // equator: theta stays at pi/2
  double worst = 0.0;
  for (int i = 0; i < static_cast<int>(tr.s.size()); ++i)
    worst = std::max(worst, std::fabs(tr.point(i)[0] - kPi / 2));
  CHECK(worst < 1e-9);
}
