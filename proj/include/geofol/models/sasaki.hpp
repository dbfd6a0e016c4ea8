#pragma once

#include "geofol/conn/christoffel.hpp"
#include "geofol/core/types.hpp"
#include "geofol/ode/integrate.hpp"

namespace geofol {

// Sasaki metric on the tangent bundle of an n-chart base metric g: on the
// 2n-chart (x, v) a tangent (xd, vd) splits through the projection
// differential dπ(xd, vd) = xd and the connection map
//   K(xd, vd)^k = vd^k + Γ^k_{ij}(x) xd^i v^j,
// and ḡ(ξ1, ξ2) = g(dπ ξ1, dπ ξ2) + g(K ξ1, K ξ2).

Vec connection_map(const CoordMetric& base, const ChartPoint& x, const Vec& v,
                   const Vec& xd, const Vec& vd);

// Blockwise assembly: with A^k_i = Γ^k_{ij} v^j,
// ḡ = [[g + AᵀgA, Aᵀg], [gA, g]].
Mat sasaki_matrix(const CoordMetric& base, const ChartPoint& x, const Vec& v);

// Independent assembly path: entry (i, j) = ḡ(e_i, e_j) by applying dπ and K
// to coordinate basis vectors.  Used to cross-check sasaki_matrix.
Mat sasaki_matrix_apply(const CoordMetric& base, const ChartPoint& x,
                        const Vec& v);

// The Sasaki metric as a 2n-chart CoordMetric (finite-difference partials;
// analytic ones would need second derivatives of the base Christoffels).
CoordMetric sasaki_metric(const CoordMetric& base);

struct LiftCheckResult {
  double max_residual = 0;         // ḡ-geodesic residual of the lifted curve
  double max_energy_mismatch = 0;  // |ḡ(ċ,ċ) - g(γ̇,γ̇)| along the curve
  double base_energy = 0;          // g(γ̇,γ̇) at the start
  int samples = 0;
};

// Lifts an integrated base geodesic to c = (γ, γ̇) and checks that c is a
// ḡ-geodesic of the same causal character.
LiftCheckResult tangent_lift_check(const CoordMetric& base,
                                   const Trajectory& geodesic, int n_samples);

struct SplitCheckResult {
  double horizontal_push_err = 0;  // ḡ on horizontal lifts vs g
  double vertical_err = 0;         // ḡ on vertical vectors vs g
  double ortho_err = 0;            // ḡ(horizontal, vertical)
  double assembly_err = 0;         // blockwise vs apply-form assembly
};

SplitCheckResult sasaki_split_checks(const CoordMetric& base,
                                     const ChartPoint& x, const Vec& v);

}  // namespace geofol
