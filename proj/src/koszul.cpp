#include "geofol/conn/koszul.hpp"

namespace geofol {

Mat gram_dir(const MetricModel& g, const ChartPoint& p, int i) {
  const int n = g.frame.dim;
  const Vec ei = g.frame.fields[i].value(p);
  if (g.gram_coord_partial) {
    Mat D = Mat::Zero(n, n);
    for (int m = 0; m < n; ++m) {
      if (ei[m] == 0.0) continue;
      D += ei[m] * g.gram_coord_partial(p, m);
    }
    return D;
  }
  auto along = [&](double s) { return g.gram(p + s * ei); };
  const double h = 1e-5;
  const Mat d1 = (along(h) - along(-h)) / (2.0 * h);
  const Mat d2 = (along(h / 2) - along(-h / 2)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

Vec structure_coeffs(const MetricModel& g, const ChartPoint& p, int i, int j) {
  if (g.structure) return g.structure(p, i, j);
  const Vec br = lie_bracket(g.frame.fields[i], g.frame.fields[j], p);
  return frame_matrix(g.frame, p).partialPivLu().solve(br);
}

namespace {

// Frame coefficients of [A, B] for constant coefficient vectors a, b.
Vec bracket_frame(const MetricModel& g, const Vec& a, const Vec& b, const ChartPoint& p) {
  const int n = g.frame.dim;
  Vec out = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w = a[i] * b[j] - a[j] * b[i];
      if (w == 0.0) continue;
      out += w * structure_coeffs(g, p, i, j);
    }
  }
  return out;
}

}  // namespace

double koszul_pair(const MetricModel& g, const Vec& a, const Vec& b, const Vec& c,
                   const ChartPoint& p) {
  const int n = g.frame.dim;
  const Mat G = g.gram(p);
  // Directional derivatives of the pairing functions (constant coefficients,
  // so only the Gram varies).
  double term_d = 0.0;
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0.0 && b[i] == 0.0 && c[i] == 0.0) continue;
    const Mat D = gram_dir(g, p, i);
    if (a[i] != 0.0) term_d += a[i] * b.dot(D * c);  // A . g(B,C)
    if (b[i] != 0.0) term_d += b[i] * a.dot(D * c);  // B . g(A,C)
    if (c[i] != 0.0) term_d -= c[i] * a.dot(D * b);  // - C . g(A,B)
  }
  const Vec ab = bracket_frame(g, a, b, p);
  const Vec ac = bracket_frame(g, a, c, p);
  const Vec bc = bracket_frame(g, b, c, p);
  return term_d + ab.dot(G * c) - ac.dot(G * b) - bc.dot(G * a);
}

Vec covariant_deriv_frame(const MetricModel& g, const Vec& a, const Vec& b,
                          const ChartPoint& p) {
  const int n = g.frame.dim;
  Vec k(n);
  for (int j = 0; j < n; ++j) {
    Vec ej = Vec::Zero(n);
    ej[j] = 1.0;
    k[j] = 0.5 * koszul_pair(g, a, b, ej, p);
  }
  const Mat G = g.gram(p);
  Eigen::FullPivLU<Mat> lu(G);
  if (!lu.isInvertible() || std::abs(G.determinant()) < g.det_floor)
    throw std::runtime_error("covariant_deriv: Gram matrix of '" + g.name +
                             "' degenerate at sample point");
  return lu.solve(k);
}

Vec covariant_deriv(const MetricModel& g, const Vec& a, const Vec& b,
                    const ChartPoint& p) {
  return frame_matrix(g.frame, p) * covariant_deriv_frame(g, a, b, p);
}

double geodesic_residual(const MetricModel& g, const Vec& a, const ChartPoint& p) {
  return covariant_deriv(g, a, a, p).norm();
}

}  // namespace geofol
