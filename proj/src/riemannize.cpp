#include "geofol/models/riemannize.hpp"

#include <cmath>

namespace geofol {

CoordMetric riemannize(const CoordMetric& g, const VectorField& X,
                       const CoordMetric& h0, double lightlike_tol,
                       double unit_tol) {
  CoordMetric h;
  h.name = "riemannized(" + g.name + "," + X.name + ")";
  h.dim = g.dim;
  auto gv = g.value;
  auto h0v = h0.value;
  auto xv = X.value;
  const std::string xname = X.name;
  h.value = [gv, h0v, xv, xname, lightlike_tol,
             unit_tol](const ChartPoint& p) -> Mat {
    const Mat G = gv(p);
    const Vec x = xv(p);
    const Vec xb = G * x;  // g(X, .)
    const double q = x.dot(xb);
    if (std::abs(q) < lightlike_tol)
      throw std::domain_error("riemannize: foliation field " + xname +
                              " is lightlike (|g(X,X)| = " +
                              std::to_string(std::abs(q)) + ")");
    if (std::abs(std::abs(q) - 1.0) > unit_tol)
      throw std::invalid_argument("riemannize: foliation field " + xname +
                                  " is not unit (g(X,X) = " +
                                  std::to_string(q) + ")");
    const Mat P =
        Mat::Identity(x.size(), x.size()) - (x * xb.transpose()) / q;
    return P.transpose() * h0v(p) * P + xb * xb.transpose();
  };
  return h;
}

}  // namespace geofol
