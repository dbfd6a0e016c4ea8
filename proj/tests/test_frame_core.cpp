#include "doctest.h"

#include "geofol/core/types.hpp"
#include "geofol/models/thurston.hpp"

#include <cmath>
#include <random>

using namespace geofol;

namespace {
constexpr double kPi = 3.14159265358979323846;

ChartPoint pt(double x, double y, double z, double t, double u) {
  ChartPoint p(5);
  p << x, y, z, t, u;
  return p;
}
}  // namespace

TEST_CASE("rotating frame fields take their defining values") {
  // V1 = cos t dx + sin t (dy + x dz); V2 = -sin t dx + cos t (dy + x dz)
  VectorField v1 = thurston::V1();
  VectorField v2 = thurston::V2();

  Vec a = v1.value(pt(0.7, 0.1, 0.2, 0.0, 1.0));
  CHECK(a[0] == 1.0);
  CHECK(a[1] == 0.0);
  CHECK(a[2] == 0.0);
  CHECK(a[3] == 0.0);
  CHECK(a[4] == 0.0);

  Vec b = v1.value(pt(1.0, 0.1, 0.2, kPi / 2, 1.0));
  CHECK(std::fabs(b[0]) < 1e-15);  // cos(pi/2)
  CHECK(b[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b[2] == doctest::Approx(1.0).epsilon(1e-15));  // x * sin t, x = 1

  Vec c = v2.value(pt(0.7, 0.1, 0.2, 0.0, 1.0));
  CHECK(c[0] == 0.0);
  CHECK(c[1] == 1.0);
  CHECK(c[2] == doctest::Approx(0.7).epsilon(1e-15));  // x * cos t
}

TEST_CASE("analytic jacobians match finite differences") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const VectorField fields[] = {thurston::V1(), thurston::V2(),
                                thurston::X(), thurston::Yfield(xi_cutoff())};
  for (int rep = 0; rep < 20; ++rep) {
    ChartPoint p = pt(U(rng), U(rng), U(rng), 2.0 * U(rng), 1.2 + 0.3 * U(rng));
    for (const auto& f : fields) {
      Mat Ja = f.jacobian(p);
      Mat Jn = fd_jacobian(f.value, p);
      CHECK((Ja - Jn).cwiseAbs().maxCoeff() < 1e-7);
    }
  }
}

TEST_CASE("base frame brackets close on the Heisenberg relations") {
  // [dt, V1] = V2, [dt, V2] = -V1, [V1, V2] = dz
  VectorField dt = thurston::coord(thurston::kT);
  VectorField v1 = thurston::V1();
  VectorField v2 = thurston::V2();
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int rep = 0; rep < 25; ++rep) {
    ChartPoint p = pt(U(rng), U(rng), U(rng), 3.0 * U(rng), U(rng));
    Vec b1 = lie_bracket(dt, v1, p) - v2.value(p);
    Vec b2 = lie_bracket(dt, v2, p) + v1.value(p);
    Vec b3 = lie_bracket(v1, v2, p);
    CHECK(b1.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(b2.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(std::fabs(b3[2] - 1.0) < 1e-14);  // dz component
    b3[2] = 0.0;
    CHECK(b3.cwiseAbs().maxCoeff() < 1e-14);
    // antisymmetry
    Vec anti = lie_bracket(v1, v2, p) + lie_bracket(v2, v1, p);
    CHECK(anti.cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("frame matrix of the base frame is unimodular at t = 0") {
  FrameSpec fr = thurston::base_frame();
  Mat F = frame_matrix(fr, pt(0.4, 0.2, 0.1, 0.0, 0.9));
  // Columns: dt, V1 = dx, V2 = dy + x dz, dz, du.
  CHECK(F(3, 0) == 1.0);
  CHECK(F(0, 1) == 1.0);
  CHECK(F(1, 2) == 1.0);
  CHECK(F(2, 2) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(std::fabs(std::fabs(F.determinant()) - 1.0) < 1e-14);
}

TEST_CASE("signature counts eigenvalue signs with a zero floor") {
  Mat d = Mat::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = -2.0;
  d(2, 2) = 3.0;
  CHECK(signature(d) == SignatureTriple{2, 1, 0});
  d(2, 2) = 0.0;
  CHECK(signature(d) == SignatureTriple{1, 1, 1});
}

TEST_CASE("metric pairing recovers Gram entries through coordinates") {
  // Constant-frame toy model: frame (2dx, dx + dy), Gram diag(1, -1).
  Vec e0(2), e1(2);
  e0 << 2, 0;
  e1 << 1, 1;
  MetricModel m;
  m.name = "toy";
  m.frame.dim = 2;
  m.frame.name = "toy";
  m.frame.fields = {constant_field(2, "a", e0), constant_field(2, "b", e1)};
  Mat G = Mat::Zero(2, 2);
  G(0, 0) = 1.0;
  G(1, 1) = -1.0;
  m.gram = [G](const ChartPoint&) { return G; };
  ChartPoint p = Vec::Zero(2);
  CHECK(metric_pair(m, e0, e0, p) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(metric_pair(m, e1, e1, p) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::fabs(metric_pair(m, e0, e1, p)) < 1e-14);
  // coordinate_gram = F^{-T} G F^{-1} must pair the same way
  Mat gc = coordinate_gram(m, p);
  CHECK((e0.transpose() * gc * e0)(0) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("flat and sharp are mutually inverse") {
  // Coordinate-frame model with constant Gram diag(2, -1).
  MetricModel g;
  g.name = "diag";
  g.frame.dim = 2;
  g.frame.name = "coords";
  Vec e0 = Vec::Zero(2), e1 = Vec::Zero(2);
  e0[0] = 1.0;
  e1[1] = 1.0;
  g.frame.fields = {constant_field(2, "d0", e0), constant_field(2, "d1", e1)};
  g.gram = [](const ChartPoint&) {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = -1.0;
    return m;
  };
  ChartPoint p = Vec::Zero(2);
  Vec v(2);
  v << 0.3, -0.8;
  Vec cov = flat(g, v, p);
  CHECK(cov[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(cov[1] == doctest::Approx(0.8).epsilon(1e-15));
  Vec back = sharp(g, cov, p);
  CHECK((back - v).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("constant fields have zero jacobian") {
  Vec dir(3);
  dir << 1, -2, 0.5;
  VectorField f = constant_field(3, "c", dir);
  ChartPoint p = Vec::Ones(3);
  CHECK((f.value(p) - dir).cwiseAbs().maxCoeff() == 0.0);
  CHECK(f.jacobian(p).cwiseAbs().maxCoeff() == 0.0);
}
