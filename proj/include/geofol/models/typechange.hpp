#pragma once

#include "geofol/core/types.hpp"
#include "geofol/models/cutoff.hpp"

namespace geofol::typechange {

// Type-changing metric on the Heisenberg-quotient chart.  Built from
//  - G0(u): 5x5 matrix in the frame (dt, V1, V2, dz, du), valid near the
//    degenerate set {u = 0, pi} where the orthogonal frame breaks down;
//  - L(u): 4x4 Gram of (V1, V2, dz, Y) in the X-orthogonal splitting, used
//    with the normalized field W = X / (2 f(u)^2) away from the degenerate
//    set; branch g1 = diag(+1, M(u)) on u in (0, pi) and branch
//    g2 = diag(-1, N(u)) on u in (-pi, 0), where M and N interpolate L to a
//    constant matrix of the same signature across a transition band.
//
// `u` enters all formulas through cos(u) and the cutoff profile f(u), so the
// matrices are 2*pi-periodic; interval logic wraps u internally.

struct Params {
  CutoffPair cutoff;
  double eta = 0;       // half-width of the certified G0 neighbourhood
  double zone = 0;      // M == L for 0 < dist-to-degenerate-set <= zone
  double band_end = 0;  // M == const beyond this distance
  double u_switch = 0;  // global metric uses G0 within this distance
  // Mutation hook for the sensitivity battery: flip the sign of one G0
  // off-diagonal pair (mut_i, mut_j); the cutoff swap is a second hook.
  int mut_i = -1, mut_j = -1;
};

// Construction failure (signature loss, factorization sign flip, ...).
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Largest grid-certified eta <= cap such that G0 keeps signature (3,2) with
// min |eigenvalue| >= min_eig for all |u| <= eta (and, by the cos-parity
// congruence, for |u - pi| <= eta).  Throws ConstructionError if even the
// smallest grid value fails.
double find_eta(const CutoffPair& c, double cap, double min_eig, int grid_n);

// Wires zone = eta/2, band_end = 0.95*eta, u_switch = 0.98*zone.
Params make_params(const CutoffPair& c, double eta_cap = 1.3,
                   double min_eig = 1e-3, int grid_n = 2000);

Mat G0(const Params& P, double u);
Mat G0_du(const Params& P, double u);  // analytic derivative

Mat L_block(const Params& P, double u);
Mat L_block_du(const Params& P, double u);

// C^inf plateau: 1 for v <= zone, 0 for v >= band_end, strictly monotone
// between, with all derivatives vanishing at both ends.
double chi(const Params& P, double v);

// Distance from (wrapped) u to the degenerate set {0, pi} within the branch
// interval; throws if u is outside the branch.
double branch_depth(const Params& P, double u, char branch);

Mat interpolated_block(const Params& P, double u, char branch /* 'M'|'N' */);

// g(X_f, X_f) = 4 f(u)^3 |f(u)| through the G0 quadratic form.
double g_xx(const Params& P, double u);

// Frame metric models with analytic frames, analytic structure tables and
// analytic (zone) / finite-difference (band) Gram u-derivatives:
//   g0 over (dt, V1, V2, dz, du) with Gram G0(u)        - near degenerate set
//   g1 over (W, V1, V2, dz, Y) with Gram diag(+1, M(u)) - u in (0, pi)
//   g2 over (W, V1, V2, dz, Y) with Gram diag(-1, N(u)) - u in (pi, 2*pi)
struct ModelSet {
  Params P;
  MetricModel g0, g1, g2;

  // Branch used by the assembled metric at u: 0 near the degenerate set,
  // otherwise 1 or 2 by half-interval.
  int branch_index(double u) const;
  const MetricModel& branch(double u) const;
  // Assembled coordinate metric (branch-selected, frame-converted).
  Mat coord_metric(const ChartPoint& p) const;
};

ModelSet make_models(const Params& P);

}  // namespace geofol::typechange
