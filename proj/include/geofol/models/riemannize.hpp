#pragma once

#include "geofol/core/types.hpp"

namespace geofol {

// Turns a pseudo-Riemannian metric g with a unit (g(X,X) = +/-1) foliation
// field X into a Riemannian metric for which the foliation stays geodesic:
//   h = h0(P., P.) + g(X,.) (x) g(X,.)
// where P is the g-orthogonal projection onto X-perp and h0 is any auxiliary
// Riemannian metric.  Throws std::domain_error when X is lightlike
// (|g(X,X)| < lightlike_tol) and std::invalid_argument when |g(X,X)| is not
// within unit_tol of 1.
CoordMetric riemannize(const CoordMetric& g, const VectorField& X,
                       const CoordMetric& h0, double lightlike_tol = 1e-6,
                       double unit_tol = 1e-6);

}  // namespace geofol
