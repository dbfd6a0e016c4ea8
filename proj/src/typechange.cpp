#include "geofol/models/typechange.hpp"

#include <cmath>

#include "geofol/models/thurston.hpp"

namespace geofol::typechange {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
using thurston::kU;

double wrap_2pi(double u) {
  double w = u - kTwoPi * std::floor(u / kTwoPi);
  if (w >= kTwoPi) w -= kTwoPi;
  return w;
}

Mat rot2(double phi) {
  Mat R(2, 2);
  const double c = std::cos(phi), s = std::sin(phi);
  R << c, -s, s, c;
  return R;
}

struct SchurEig {
  double lp = 0, lm = 0, theta = 0;
};

// Closed-form eigendecomposition of the 2x2 Schur complement
// R = P2 - B^T P1^{-1} B of the L block.
SchurEig schur_eig(const Mat& L) {
  Mat P1inv(2, 2);
  P1inv << 0, 2, 2, 0;
  const Mat B = L.block(0, 2, 2, 2);
  const Mat R = L.block(2, 2, 2, 2) - B.transpose() * P1inv * B;
  const double a = R(0, 0), b = R(0, 1), c = R(1, 1);
  SchurEig e;
  const double m = 0.5 * (a + c), r = std::hypot(0.5 * (a - c), b);
  e.lp = m + r;
  e.lm = m - r;
  e.theta = 0.5 * std::atan2(2 * b, a - c);
  return e;
}

}  // namespace

Mat G0(const Params& P, double u) {
  const double c = std::cos(u);
  const double f = P.cutoff.f(u), fa = P.cutoff.fabs(u);
  Mat G = Mat::Zero(5, 5);
  G(0, 0) = c * c * c * c / 4;
  G(0, 1) = fa / (2 * c);
  G(0, 3) = c * c * f * f / 2 - f * fa / (c * c);
  G(1, 2) = 0.5;
  G(1, 3) = fa * f * f / (c * c * c);
  G(2, 3) = f / c;
  G(3, 3) = f * f * f * f;
  G(3, 4) = -1.0;
  G(4, 4) = 1.0;
  Mat S = G + G.transpose();
  S.diagonal() = G.diagonal();
  if (P.mut_i >= 0) {
    S(P.mut_i, P.mut_j) = -S(P.mut_i, P.mut_j);
    S(P.mut_j, P.mut_i) = -S(P.mut_j, P.mut_i);
  }
  return S;
}

Mat G0_du(const Params& P, double u) {
  const double c = std::cos(u), s = std::sin(u);
  const double f = P.cutoff.f(u), fa = P.cutoff.fabs(u);
  const double df = P.cutoff.df(u), dfa = P.cutoff.dfabs(u);
  Mat G = Mat::Zero(5, 5);
  G(0, 0) = -c * c * c * s;
  G(0, 1) = (dfa * c + fa * s) / (2 * c * c);
  G(0, 3) = (-c * s * f * f + c * c * f * df) -
            ((df * fa + f * dfa) / (c * c) + 2 * s * f * fa / (c * c * c));
  G(1, 3) = (dfa * f * f + 2 * fa * f * df) / (c * c * c) +
            3 * s * fa * f * f / (c * c * c * c);
  G(2, 3) = (df * c + f * s) / (c * c);
  G(3, 3) = 4 * f * f * f * df;
  Mat S = G + G.transpose();
  S.diagonal() = G.diagonal();
  if (P.mut_i >= 0) {
    S(P.mut_i, P.mut_j) = -S(P.mut_i, P.mut_j);
    S(P.mut_j, P.mut_i) = -S(P.mut_j, P.mut_i);
  }
  return S;
}

Mat L_block(const Params& P, double u) {
  const double c = std::cos(u);
  const double f = P.cutoff.f(u), fa = P.cutoff.fabs(u);
  Mat L = Mat::Zero(4, 4);
  L(0, 1) = 0.5;
  L(0, 2) = fa * f * f / (c * c * c);
  L(0, 3) = -(c / 2) * fa;
  L(1, 2) = f / c;
  L(2, 2) = f * f * f * f;
  L(2, 3) = -(c * c * c * c / 2) * f * f - f * fa;
  L(3, 3) = c * c * c * c * c * c * c * c / 4 + 4 * f * f * f * f;
  Mat S = L + L.transpose();
  S.diagonal() = L.diagonal();
  return S;
}

Mat L_block_du(const Params& P, double u) {
  const double c = std::cos(u), s = std::sin(u);
  const double f = P.cutoff.f(u), fa = P.cutoff.fabs(u);
  const double df = P.cutoff.df(u), dfa = P.cutoff.dfabs(u);
  Mat L = Mat::Zero(4, 4);
  L(0, 2) = (dfa * f * f + 2 * fa * f * df) / (c * c * c) +
            3 * s * fa * f * f / (c * c * c * c);
  L(0, 3) = (s / 2) * fa - (c / 2) * dfa;
  L(1, 2) = (df * c + f * s) / (c * c);
  L(2, 2) = 4 * f * f * f * df;
  L(2, 3) = 2 * c * c * c * s * f * f - c * c * c * c * f * df -
            (df * fa + f * dfa);
  L(3, 3) = -2 * std::pow(c, 7) * s + 16 * f * f * f * df;
  Mat S = L + L.transpose();
  S.diagonal() = L.diagonal();
  return S;
}

double chi(const Params& P, double v) {
  if (v <= P.zone) return 1.0;
  if (v >= P.band_end) return 0.0;
  const double w = (v - P.zone) / (P.band_end - P.zone);
  const double a = std::exp(-1.0 / (1.0 - w));
  const double b = std::exp(-1.0 / w);
  return a / (a + b);
}

double branch_depth(const Params& P, double u, char branch) {
  (void)P;
  const double uw = wrap_2pi(u);
  if (branch == 'M') {
    if (!(uw > 0 && uw < kPi))
      throw ConstructionError("branch M evaluated outside (0, pi)");
    return std::min(uw, kPi - uw);
  }
  if (!(uw > kPi && uw < kTwoPi))
    throw ConstructionError("branch N evaluated outside (pi, 2*pi)");
  return std::min(uw - kPi, kTwoPi - uw);
}

namespace {

// Frozen diagonal signs of the Schur block, taken at the branch seam (depth
// = zone) where both eigenvalues are numerically well-resolved, and audited
// at every band point.
Eigen::Vector2d seam_signs(const Params& P, char branch) {
  const double useam = (branch == 'M') ? P.zone : kTwoPi - P.zone;
  const SchurEig e = schur_eig(L_block(P, useam));
  if (e.lp == 0 || e.lm == 0)
    throw ConstructionError("degenerate Schur block at the seam");
  return {e.lp > 0 ? 1.0 : -1.0, e.lm > 0 ? 1.0 : -1.0};
}

}  // namespace

Mat interpolated_block(const Params& P, double u, char branch) {
  const double v = branch_depth(P, u, branch);
  const Eigen::Vector2d j2 = seam_signs(P, branch);
  if (v >= P.band_end) {
    Vec d(4);
    d << 1, -1, j2[0], j2[1];
    return d.asDiagonal();
  }
  const Mat L = L_block(P, u);
  if (v <= P.zone) return L;

  const double x = chi(P, v);
  const SchurEig e = schur_eig(L);
  if ((e.lp > 0 ? 1.0 : -1.0) != j2[0] || (e.lm > 0 ? 1.0 : -1.0) != j2[1])
    throw ConstructionError(
        "interpolation sign audit failed at u = " + std::to_string(u) +
        " (Schur eigenvalues " + std::to_string(e.lp) + ", " +
        std::to_string(e.lm) + ")");

  Mat P1inv(2, 2);
  P1inv << 0, 2, 2, 0;
  const double half_pow = std::pow(0.5, x / 2);
  Mat W1 = (Vec(2) << half_pow, half_pow).finished().asDiagonal() *
           rot2(x * kPi / 4).transpose();
  Mat W2 = (Vec(2) << std::pow(std::abs(e.lp), x / 2),
            std::pow(std::abs(e.lm), x / 2))
               .finished()
               .asDiagonal() *
           rot2(x * e.theta).transpose();
  Mat T = Mat::Identity(4, 4);
  T.block(0, 2, 2, 2) = x * (P1inv * L.block(0, 2, 2, 2));
  Mat E = Mat::Zero(4, 4);
  E.block(0, 0, 2, 2) = W1;
  E.block(2, 2, 2, 2) = W2;
  E = (E * T).eval();
  if (E.determinant() <= 0)
    throw ConstructionError("interpolation frame lost orientation at u = " +
                            std::to_string(u));
  Vec jd(4);
  jd << 1, -1, j2[0], j2[1];
  Mat M = E.transpose() * jd.asDiagonal() * E;
  return 0.5 * (M + M.transpose());
}

double g_xx(const Params& P, double u) {
  const double c = std::cos(u);
  const double f = P.cutoff.f(u);
  Vec xc(5);
  xc << 2 * f * f, 2 * f * c, 0, -c * c, 0;
  return xc.dot(G0(P, u) * xc);
}

double find_eta(const CutoffPair& c, double cap, double min_eig, int grid_n) {
  Params P0;
  P0.cutoff = c;
  auto certified = [&](double u) {
    for (double uu : {u, -u}) {
      Eigen::SelfAdjointEigenSolver<Mat> es(G0(P0, uu));
      const Vec ev = es.eigenvalues();
      int plus = 0, minus = 0;
      for (int i = 0; i < 5; ++i) {
        if (ev[i] > 0) ++plus;
        if (ev[i] < 0) ++minus;
      }
      if (plus != 3 || minus != 2 || ev.cwiseAbs().minCoeff() < min_eig)
        return false;
    }
    return true;
  };
  double eta = 0;
  for (int i = 1; i <= grid_n; ++i) {
    const double u = cap * (double)i / grid_n;
    if (!certified(u)) break;
    eta = u;
  }
  if (eta <= 0)
    throw ConstructionError("no neighbourhood of the degenerate set keeps "
                            "signature (3,2) above the eigenvalue floor");
  return eta;
}

Params make_params(const CutoffPair& c, double eta_cap, double min_eig,
                   int grid_n) {
  Params P;
  P.cutoff = c;
  P.eta = find_eta(c, eta_cap, min_eig, grid_n);
  P.zone = P.eta / 2;
  P.band_end = 0.95 * P.eta;
  P.u_switch = 0.98 * P.zone;
  return P;
}

namespace {

// Structure table of the frame (dt, V1, V2, dz, du):
// [dt,V1] = V2, [dt,V2] = -V1, [V1,V2] = dz, all other pairs commute.
Vec base_structure(const ChartPoint&, int i, int j) {
  Vec c = Vec::Zero(5);
  double sign = 1;
  if (i > j) {
    std::swap(i, j);
    sign = -1;
  }
  if (i == 0 && j == 1) c[2] = sign;
  if (i == 0 && j == 2) c[1] = -sign;
  if (i == 1 && j == 2) c[3] = sign;
  return c;
}

// Structure table of the frame (W, V1, V2, dz, Y):
// [W,V1] = V2;  [W,V2] = (cos u / f) dz - V1;  [W,dz] = 0;
// [W,Y]  = kv1 V1 + kv2 V2 + kz dz with
//   kv1 = 2 fa (s f + c f')/f,  kv2 = c^3/f,  kz = -2 c fa (s f + c f')/f^2;
// [V1,V2] = dz;  [V1,Y] = c^2 V2;  [V2,Y] = -c^2 V1;  [dz,.] = 0.
Vec orth_structure(const CutoffPair& cp, const ChartPoint& p, int i, int j) {
  Vec c = Vec::Zero(5);
  double sign = 1;
  if (i > j) {
    std::swap(i, j);
    sign = -1;
  }
  const double u = p[kU];
  const double cu = std::cos(u), su = std::sin(u);
  const double f = cp.f(u), fa = cp.fabs(u), df = cp.df(u);
  if (i == 0 && j == 1) {
    c[2] = sign;
  } else if (i == 0 && j == 2) {
    c[1] = -sign;
    c[3] = sign * cu / f;
  } else if (i == 0 && j == 4) {
    const double sfcf = su * f + cu * df;
    c[1] = sign * 2 * fa * sfcf / f;
    c[2] = sign * cu * cu * cu / f;
    c[3] = -sign * 2 * cu * fa * sfcf / (f * f);
  } else if (i == 1 && j == 2) {
    c[3] = sign;
  } else if (i == 1 && j == 4) {
    c[2] = sign * cu * cu;
  } else if (i == 2 && j == 4) {
    c[1] = -sign * cu * cu;
  }
  return c;
}

// 4th-order central difference of the interpolated block in u (used on the
// transition band, where no closed-form derivative is kept).
Mat block_du_fd(const Params& P, double u, char branch) {
  const double h = 1e-3;
  return (interpolated_block(P, u - 2 * h, branch) -
          8 * interpolated_block(P, u - h, branch) +
          8 * interpolated_block(P, u + h, branch) -
          interpolated_block(P, u + 2 * h, branch)) /
         (12 * h);
}

MetricModel make_branch_model(const Params& P, char branch) {
  MetricModel m;
  m.name = std::string("typechange-") + P.cutoff.name + "-" +
           (branch == 'M' ? "g1" : "g2");
  m.frame = thurston::orth_frame(P.cutoff);
  const Params Pc = P;
  m.gram = [Pc, branch](const ChartPoint& p) {
    const double u = p[kU];
    Mat G = Mat::Zero(5, 5);
    G(0, 0) = Pc.cutoff.fabs(u) / Pc.cutoff.f(u);
    G.block(1, 1, 4, 4) = interpolated_block(Pc, u, branch);
    return G;
  };
  m.gram_coord_partial = [Pc, branch](const ChartPoint& p, int k) {
    Mat G = Mat::Zero(5, 5);
    if (k != kU) return G;
    const double v = branch_depth(Pc, p[kU], branch);
    if (v >= Pc.band_end) return G;  // constant block
    if (v <= Pc.zone)
      G.block(1, 1, 4, 4) = L_block_du(Pc, p[kU]);
    else
      G.block(1, 1, 4, 4) = block_du_fd(Pc, p[kU], branch);
    return G;
  };
  m.structure = [Pc](const ChartPoint& p, int i, int j) {
    return orth_structure(Pc.cutoff, p, i, j);
  };
  return m;
}

}  // namespace

ModelSet make_models(const Params& P) {
  ModelSet ms;
  ms.P = P;

  ms.g0.name = std::string("typechange-") + P.cutoff.name + "-g0";
  ms.g0.frame = thurston::base_frame();
  const Params Pc = P;
  ms.g0.gram = [Pc](const ChartPoint& p) { return G0(Pc, p[kU]); };
  ms.g0.gram_coord_partial = [Pc](const ChartPoint& p, int k) {
    return k == kU ? G0_du(Pc, p[kU]) : Mat(Mat::Zero(5, 5));
  };
  ms.g0.structure = [](const ChartPoint& p, int i, int j) {
    return base_structure(p, i, j);
  };

  ms.g1 = make_branch_model(P, 'M');
  ms.g2 = make_branch_model(P, 'N');
  return ms;
}

int ModelSet::branch_index(double u) const {
  const double uw = wrap_2pi(u);
  const double v0 = std::min({uw, std::abs(uw - kPi), kTwoPi - uw});
  if (v0 <= P.u_switch) return 0;
  return uw < kPi ? 1 : 2;
}

const MetricModel& ModelSet::branch(double u) const {
  switch (branch_index(u)) {
    case 0:
      return g0;
    case 1:
      return g1;
    default:
      return g2;
  }
}

Mat ModelSet::coord_metric(const ChartPoint& p) const {
  return coordinate_gram(branch(p[kU]), p);
}

}  // namespace geofol::typechange
