#pragma once

#include <cmath>
#include <string>

namespace geofol {

// The reparametrizing profile f(u) and its companion fabs(u) used by the
// 5-manifold metrics, together with analytic u-derivatives.
//
// xi variant:  f(u) = e^{-1/sin^2 u} for u in (0,pi) mod 2pi,
//              -e^{-1/sin^2 u} for u in (-pi,0) mod 2pi, 0 at multiples of pi;
//              fabs = |f|.  All derivatives vanish to all orders at the zeros.
// sin variant: f(u) = sin(u), fabs(u) = sin(u) (the companion loses the
//              absolute value, which is what makes g(X,X) = 4 sin^4(u) >= 0).
struct CutoffPair {
  std::string name;
  double (*f)(double);
  double (*fabs)(double);
  double (*df)(double);
  double (*dfabs)(double);
};

namespace cutoff {

// e^{-1/sin^2 u} with the sign of sin u; exact 0 at u in pi*Z (the exponent
// underflows long before sin^2 u reaches 0, so no special-casing is needed
// beyond keeping 0 * inf out of the derivative formulas).
double xi(double u);
double xi_abs(double u);
// d/du of the above: value * 2 cos(u) / sin^3(u), flat (0) wherever value is 0.
double dxi(double u);
double dxi_abs(double u);

double sinf_(double u);
double dsinf_(double u);

}  // namespace cutoff

const CutoffPair& xi_cutoff();
const CutoffPair& sin_cutoff();

}  // namespace geofol
