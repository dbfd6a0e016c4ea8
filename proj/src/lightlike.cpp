#include "geofol/models/lightlike.hpp"

#include "geofol/models/thurston.hpp"

namespace geofol::lightlike {

MetricModel model() {
  MetricModel m;
  m.name = "lightlike";
  m.frame = thurston::lightlike_frame();
  Mat G = Mat::Zero(5, 5);
  G(0, 1) = G(1, 0) = 1;
  G(2, 2) = G(3, 3) = G(4, 4) = 1;
  m.gram = [G](const ChartPoint&) { return G; };
  m.gram_coord_partial = [](const ChartPoint&, int) { return Mat::Zero(5, 5); };
  return m;
}

Vec x_flat(const ChartPoint& p) {
  const MetricModel m = model();
  const Mat F = frame_matrix(m.frame, p);
  // Coordinate metric g = F^{-T} G F^{-1}; X is frame column 0, so
  // g*X = F^{-T} G e0.
  Vec Ge0 = m.gram(p).col(0);
  return F.transpose().partialPivLu().solve(Ge0);
}

double x_flat_exterior_derivative_max(const ChartPoint& p, double h) {
  Mat J(5, 5);  // J(i, j) = d_i (x_flat_j)
  for (int i = 0; i < 5; ++i) {
    ChartPoint pp = p, pm = p;
    pp[i] += h;
    pm[i] -= h;
    J.row(i) = (x_flat(pp) - x_flat(pm)) / (2 * h);
  }
  return (J - J.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace geofol::lightlike
