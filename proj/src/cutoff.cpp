#include "geofol/models/cutoff.hpp"

namespace geofol {
namespace cutoff {

double xi_abs(double u) {
  const double s = std::sin(u);
  const double s2 = s * s;
  if (s2 == 0.0) return 0.0;
  return std::exp(-1.0 / s2);  // underflows to 0 well before s2 does
}

double xi(double u) {
  const double s = std::sin(u);
  const double s2 = s * s;
  if (s2 == 0.0) return 0.0;
  const double v = std::exp(-1.0 / s2);
  return s > 0 ? v : -v;
}

double dxi(double u) {
  const double v = xi(u);
  if (v == 0.0) return 0.0;
  const double s = std::sin(u);
  return v * 2.0 * std::cos(u) / (s * s * s);
}

double dxi_abs(double u) {
  const double v = xi_abs(u);
  if (v == 0.0) return 0.0;
  const double s = std::sin(u);
  return v * 2.0 * std::cos(u) / (s * s * s);
}

double sinf_(double u) { return std::sin(u); }
double dsinf_(double u) { return std::cos(u); }

}  // namespace cutoff

const CutoffPair& xi_cutoff() {
  static const CutoffPair c{"xi", cutoff::xi, cutoff::xi_abs, cutoff::dxi, cutoff::dxi_abs};
  return c;
}

const CutoffPair& sin_cutoff() {
  static const CutoffPair c{"sin", cutoff::sinf_, cutoff::sinf_, cutoff::dsinf_,
                            cutoff::dsinf_};
  return c;
}

}  // namespace geofol
