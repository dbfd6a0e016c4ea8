#pragma once

#include "geofol/core/types.hpp"

namespace geofol {

// Coordinate-basis Levi-Civita coefficients and derived operators.

// Gamma[k](i,j) = 1/2 g^{kl} (d_i g_{lj} + d_j g_{li} - d_l g_{ij}).
// Metric partials use g.partial when provided, otherwise Richardson central
// differences with step 1e-5 * (1 + |p_i|).
std::vector<Mat> christoffels(const CoordMetric& g, const ChartPoint& p);

Mat coord_metric_partial(const CoordMetric& g, const ChartPoint& p, int i);

// nabla_A B = A^i d_i B^k + Gamma^k_{ij} A^i B^j (coordinate components).
Vec covariant_deriv_coord(const CoordMetric& g, const VectorField& A,
                          const VectorField& B, const ChartPoint& p);

double geodesic_residual_coord(const CoordMetric& g, const VectorField& X,
                               const ChartPoint& p);

// Divergence, two independent code paths:
//  volume: sum_i d_i X^i + X^i d_i log sqrt|det g|
//  trace:  sum_k (d_k X^k + Gamma^k_{ki} X^i)
double divergence_volume(const CoordMetric& g, const VectorField& X, const ChartPoint& p);
double divergence_trace(const CoordMetric& g, const VectorField& X, const ChartPoint& p);

// Coordinate metric derived from a frame metric, with analytic partials
// assembled by the product rule from the frame-field Jacobians and the
// model's Gram partials (finite differences where the model lacks them).
CoordMetric to_coord_metric(const MetricModel& g);

// Geodesic right-hand side residual for a state (p, v):
// r^k = Gamma^k_{ij} v^i v^j (the acceleration a geodesic must cancel).
Vec geodesic_acceleration(const CoordMetric& g, const ChartPoint& p, const Vec& v);

}  // namespace geofol
