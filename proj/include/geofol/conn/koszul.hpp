#pragma once

#include "geofol/core/types.hpp"

namespace geofol {

// Levi-Civita connection evaluated directly in a moving frame via the Koszul
// formula.  Inputs are CONSTANT coefficient vectors in the metric's frame
// (each frame field itself is e_i); this is exactly the shape of every
// geodesic-field check in the artifact, and it is what keeps the evaluation
// well-conditioned near the bad set: no frame-matrix derivative ever enters.

// Directional derivative of the frame Gram along frame field i.
// Uses the model's analytic coordinate partials when available, otherwise a
// Richardson central difference along the straight line p + s*E_i(p).
Mat gram_dir(const MetricModel& g, const ChartPoint& p, int i);

// Frame coefficients of [E_i, E_j] at p: the model's structure callback when
// present, else the coordinate lie_bracket converted through the frame matrix.
Vec structure_coeffs(const MetricModel& g, const ChartPoint& p, int i, int j);

// 2 g(nabla_A B, C) for constant frame-coefficient vectors a, b, c.
double koszul_pair(const MetricModel& g, const Vec& a, const Vec& b, const Vec& c,
                   const ChartPoint& p);

// nabla_A B in frame coefficients (solves the Gram system), and in coordinates.
Vec covariant_deriv_frame(const MetricModel& g, const Vec& a, const Vec& b,
                          const ChartPoint& p);
Vec covariant_deriv(const MetricModel& g, const Vec& a, const Vec& b,
                    const ChartPoint& p);

// || nabla_A A || in the Euclidean norm on coordinate components.
double geodesic_residual(const MetricModel& g, const Vec& a, const ChartPoint& p);

}  // namespace geofol
