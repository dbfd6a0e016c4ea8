#include "doctest.h"

#include "geofol/core/types.hpp"
#include "geofol/models/typechange.hpp"

#include <cmath>

using namespace geofol;
using namespace geofol::typechange;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

TEST_CASE("certified parameters for the exponential-cutoff profile") {
  Params P = make_params(xi_cutoff());
  // The search is capped at 1.3 and the full cap certifies, so eta == cap.
  CHECK(P.eta == 1.3);
  CHECK(P.zone == doctest::Approx(P.eta / 2).epsilon(1e-15));
  CHECK(P.band_end == doctest::Approx(0.95 * P.eta).epsilon(1e-15));
  CHECK(P.u_switch == doctest::Approx(0.98 * P.zone).epsilon(1e-15));
  CHECK(P.zone < P.band_end);
  CHECK(P.u_switch < P.zone);
}

TEST_CASE("construction fails when the eigenvalue floor is unattainable") {
  CHECK_THROWS_AS((void)make_params(xi_cutoff(), 1.3, 10.0, 400),
                  ConstructionError);
}

TEST_CASE("near-degenerate Gram at u = 0 collapses to the flat-pair form") {
  // G0 entries are built from c = cos(u), f, f' = fa'; at u = 0 the profile
  // and its derivative vanish, leaving only the constant entries.
  Params P = make_params(xi_cutoff());
  Mat G = G0(P, 0.0);
  Mat want = Mat::Zero(5, 5);
  want(0, 0) = 0.25;  // c^4 / 4
  want(1, 2) = want(2, 1) = 0.5;
  want(3, 4) = want(4, 3) = -1.0;
  want(4, 4) = 1.0;
  CHECK((G - want).cwiseAbs().maxCoeff() == 0.0);
  CHECK(signature(G) == SignatureTriple{3, 2, 0});
  CHECK((G - G.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("near-degenerate Gram matches frozen reference values at u = 0.8") {
  // Reference numbers computed independently from the closed forms
  //   G00 = c^4/4,  G01 = f'/(2c),  G03 = c^2 f^2/2 - f f'/c^2,
  //   G12 = 1/2,    G13 = f' f^2 / c^3,  G23 = f/c,  G33 = f^4,
  //   G34 = -1, G44 = 1  with f(u) = e^{-1/sin^2 u}, c = cos u.
  Params P = make_params(xi_cutoff());
  CHECK(P.cutoff.f(0.8) ==
        doctest::Approx(0.14323655273242275).epsilon(1e-14));
  Mat G = G0(P, 0.8);
  CHECK(G(0, 0) == doctest::Approx(0.058903347968752864).epsilon(1e-14));
  CHECK(G(0, 1) == doctest::Approx(0.10279544520723763).epsilon(1e-14));
  CHECK(G(0, 3) == doctest::Approx(-0.03728820624483054).epsilon(1e-14));
  CHECK(G(1, 2) == 0.5);
  CHECK(G(1, 3) == doctest::Approx(0.008689836443476614).epsilon(1e-14));
  CHECK(G(2, 3) == doctest::Approx(0.20559089041447526).epsilon(1e-14));
  CHECK(G(3, 3) == doctest::Approx(0.00042093539081078537).epsilon(1e-14));
  CHECK(G(3, 4) == -1.0);
  CHECK(G(4, 4) == 1.0);
  CHECK((G - G.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("analytic Gram derivative matches central differences") {
  Params P = make_params(xi_cutoff());
  for (double u : {0.3, 0.8, 1.1}) {
    const double h = 1e-5;
    Mat num = (G0(P, u + h) - G0(P, u - h)) / (2 * h);
    CHECK((G0_du(P, u) - num).cwiseAbs().maxCoeff() < 1e-8);
    Mat numL = (L_block(P, u + h) - L_block(P, u - h)) / (2 * h);
    CHECK((L_block_du(P, u) - numL).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("foliation-field norm changes sign across the degenerate set") {
  // g(X_f, X_f) = 4 f(u)^3 |f(u)|: positive on (0, pi), negative on
  // (pi, 2 pi), zero on the degenerate set itself.
  Params P = make_params(xi_cutoff());
  CHECK(g_xx(P, 0.3) ==
        doctest::Approx(5.133928805104117e-20).epsilon(1e-11));
  double lo = g_xx(P, kTwoPi - 0.3);
  CHECK(lo < 0.0);
  CHECK(std::fabs(lo + 5.133928805104117e-20) < 1e-11 * 5.2e-20);
  CHECK(g_xx(P, 0.0) == 0.0);
  // Independent closed form at a handy point: 4 f(0.8)^4.
  double f = P.cutoff.f(0.8);
  CHECK(g_xx(P, 0.8) == doctest::Approx(4 * f * f * f * f).epsilon(1e-12));
}

TEST_CASE("sine-profile norm is the quartic sine") {
  Params P = make_params(sin_cutoff());
  CHECK(g_xx(P, 0.8) == doctest::Approx(1.059251656705201).epsilon(1e-14));
}

TEST_CASE("splitting block has the degenerate-set-limit signature profile") {
  Params P = make_params(xi_cutoff());
  // Close to the degenerate set the Y-row degenerates: signature (2,1,1);
  // by mid-zone the block is honestly (2,2).
  CHECK(signature(L_block(P, 0.01)) == SignatureTriple{2, 1, 1});
  CHECK(signature(L_block(P, 0.45)) == SignatureTriple{2, 2, 0});
}

TEST_CASE("transition function is an exact 0/1 plateau with a smooth middle") {
  Params P = make_params(xi_cutoff());
  CHECK(chi(P, 0.0) == 1.0);
  CHECK(chi(P, P.zone) == 1.0);
  CHECK(chi(P, P.zone + 1e-3) == 1.0);  // plateau extends past the seam
  CHECK(chi(P, 0.5 * (P.zone + P.band_end)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(chi(P, P.band_end - 5e-4) == 0.0);  // underflows to an exact zero
  CHECK(chi(P, P.band_end) == 0.0);
  CHECK(chi(P, P.band_end + 1.0) == 0.0);
  double prev = 1.0;
  for (int i = 1; i <= 40; ++i) {
    double v = P.zone + (P.band_end - P.zone) * i / 41.0;
    double c = chi(P, v);
    CHECK(c <= prev);
    prev = c;
  }
}

TEST_CASE("interpolated block equals the exact splitting block inside zone") {
  Params P = make_params(xi_cutoff());
  for (double u : {0.05, 0.2, 0.4, P.zone}) {
    CHECK((interpolated_block(P, u, 'M') - L_block(P, u))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    // Mirror seam: depth pi - u.
    CHECK((interpolated_block(P, kPi - u, 'M') - L_block(P, kPi - u))
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
}

TEST_CASE("interpolated block is the constant model matrix mid-branch") {
  Params P = make_params(xi_cutoff());
  Mat A = interpolated_block(P, 1.30, 'M');
  Mat B = interpolated_block(P, 1.60, 'M');
  CHECK((A - B).cwiseAbs().maxCoeff() == 0.0);
  Mat wantM = Mat::Zero(4, 4);
  wantM.diagonal() << 1.0, -1.0, 1.0, -1.0;
  CHECK((A - wantM).cwiseAbs().maxCoeff() == 0.0);
  // Lower branch: same plateau with the opposite Y-direction sign.
  Mat N = interpolated_block(P, kTwoPi - 1.60, 'N');
  Mat wantN = Mat::Zero(4, 4);
  wantN.diagonal() << 1.0, -1.0, 1.0, 1.0;
  CHECK((N - wantN).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("branch dispatch honors the switch distance") {
  Params P = make_params(xi_cutoff());
  ModelSet ms = make_models(P);
  CHECK(ms.branch_index(0.1) == 0);
  CHECK(ms.branch_index(kPi - 0.1) == 0);
  CHECK(ms.branch_index(kPi + 0.1) == 0);
  CHECK(ms.branch_index(kTwoPi - 0.1) == 0);
  CHECK(ms.branch_index(1.0) == 1);
  CHECK(ms.branch_index(kPi + 1.0) == 2);
  CHECK(ms.branch_index(1.0 + kTwoPi) == 1);  // periodic wrap
  CHECK(&ms.branch(1.0) == &ms.g1);
  CHECK(&ms.branch(kPi + 1.0) == &ms.g2);
  CHECK(&ms.branch(0.1) == &ms.g0);
}

TEST_CASE("branch depth wraps and rejects the wrong half-interval") {
  Params P = make_params(xi_cutoff());
  CHECK(branch_depth(P, 2.0, 'M') ==
        doctest::Approx(kPi - 2.0).epsilon(1e-15));
  CHECK(branch_depth(P, 0.2, 'M') == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(branch_depth(P, kPi + 0.2, 'N') ==
        doctest::Approx(0.2).epsilon(1e-14));
  CHECK_THROWS_AS((void)branch_depth(P, 5.0, 'M'), ConstructionError);
  CHECK_THROWS_AS((void)branch_depth(P, 1.0, 'N'), ConstructionError);
}

TEST_CASE("mutation hook flips exactly the requested off-diagonal pair") {
  Params P = make_params(xi_cutoff());
  Params Pm = P;
  Pm.mut_i = 0;
  Pm.mut_j = 1;
  Mat G = G0(P, 0.5);
  Mat Gm = G0(Pm, 0.5);
  CHECK(Gm(0, 1) == -G(0, 1));
  CHECK(Gm(1, 0) == -G(1, 0));
  Mat D = Gm - G;
  D(0, 1) = 0.0;
  D(1, 0) = 0.0;
  CHECK(D.cwiseAbs().maxCoeff() == 0.0);
}
