#pragma once

#include "geofol/core/types.hpp"

namespace geofol::lightlike {

// Degenerate-on-no-fiber metric on the Heisenberg-quotient chart making the
// circle-foliation field X geodesic and lightlike: in the moving frame
// (X, du, V1, V2, 2*dt+dz) the matrix is constant with g(X, du) = 1, the
// identity on the trailing 3x3 block and zeros elsewhere.
MetricModel model();

// Coordinate covector of X (g(X, .) in the coordinate cobasis); equals the
// du coordinate covector (0,0,0,0,1) identically.
Vec x_flat(const ChartPoint& p);

// Max |d(X_flat)_{ij}| = |d_i(Xb_j) - d_j(Xb_i)| via central differences.
double x_flat_exterior_derivative_max(const ChartPoint& p, double h);

}  // namespace geofol::lightlike
