#include "geofol/conn/christoffel.hpp"

namespace geofol {

Mat coord_metric_partial(const CoordMetric& g, const ChartPoint& p, int i) {
  if (g.partial) return g.partial(p, i);
  const double h = 1e-5 * (1.0 + std::abs(p[i]));
  auto at = [&](double d) {
    ChartPoint q = p;
    q[i] += d;
    return g.value(q);
  };
  const Mat d1 = (at(h) - at(-h)) / (2.0 * h);
  const Mat d2 = (at(h / 2) - at(-h / 2)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

std::vector<Mat> christoffels(const CoordMetric& g, const ChartPoint& p) {
  const int n = g.dim;
  std::vector<Mat> dg(n);
  for (int i = 0; i < n; ++i) dg[i] = coord_metric_partial(g, p, i);
  const Mat ginv = g.value(p).partialPivLu().inverse();
  std::vector<Mat> Gamma(n, Mat::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        Gamma[k](i, j) = 0.5 * s;
        Gamma[k](j, i) = Gamma[k](i, j);
      }
  return Gamma;
}

Vec geodesic_acceleration(const CoordMetric& g, const ChartPoint& p, const Vec& v) {
  const auto Gamma = christoffels(g, p);
  Vec a(g.dim);
  for (int k = 0; k < g.dim; ++k) a[k] = v.dot(Gamma[k] * v);
  return a;
}

Vec covariant_deriv_coord(const CoordMetric& g, const VectorField& A,
                          const VectorField& B, const ChartPoint& p) {
  const Vec a = A.value(p);
  const Vec b = B.value(p);
  Vec out = B.jacobian(p) * a;
  const auto Gamma = christoffels(g, p);
  for (int k = 0; k < g.dim; ++k) out[k] += a.dot(Gamma[k] * b);
  return out;
}

double geodesic_residual_coord(const CoordMetric& g, const VectorField& X,
                               const ChartPoint& p) {
  return covariant_deriv_coord(g, X, X, p).norm();
}

double divergence_volume(const CoordMetric& g, const VectorField& X, const ChartPoint& p) {
  const int n = g.dim;
  const double div_flat = X.jacobian(p).trace();
  const Mat ginv = g.value(p).partialPivLu().inverse();
  const Vec x = X.value(p);
  double corr = 0.0;
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    // d_i log sqrt|det g| = 1/2 tr(g^{-1} d_i g)
    corr += x[i] * 0.5 * (ginv * coord_metric_partial(g, p, i)).trace();
  }
  return div_flat + corr;
}

double divergence_trace(const CoordMetric& g, const VectorField& X, const ChartPoint& p) {
  const int n = g.dim;
  double out = X.jacobian(p).trace();
  const auto Gamma = christoffels(g, p);
  const Vec x = X.value(p);
  for (int k = 0; k < n; ++k) out += Gamma[k].row(k).dot(x);
  return out;
}

CoordMetric to_coord_metric(const MetricModel& g) {
  CoordMetric out;
  out.name = g.name + "/coord";
  out.dim = g.frame.dim;
  const MetricModel model = g;
  out.value = [model](const ChartPoint& p) { return coordinate_gram(model, p); };
  out.partial = [model](const ChartPoint& p, int i) {
    const int n = model.frame.dim;
    const Mat F = frame_matrix(model.frame, p);
    const Eigen::PartialPivLU<Mat> lu(F);
    const Mat Finv = lu.inverse();
    const Mat gc = Finv.transpose() * model.gram(p) * Finv;
    // d_i F: column j is the i-th column of frame field j's Jacobian.
    Mat dF(n, n);
    for (int j = 0; j < n; ++j) dF.col(j) = model.frame.fields[j].jacobian(p).col(i);
    Mat dG;
    if (model.gram_coord_partial) {
      dG = model.gram_coord_partial(p, i);
    } else {
      const double h = 1e-5 * (1.0 + std::abs(p[i]));
      auto at = [&](double d) {
        ChartPoint q = p;
        q[i] += d;
        return model.gram(q);
      };
      const Mat d1 = (at(h) - at(-h)) / (2.0 * h);
      const Mat d2 = (at(h / 2) - at(-h / 2)) / h;
      dG = (4.0 * d2 - d1) / 3.0;
    }
    const Mat A = dF * Finv;  // (d_i F) F^{-1}
    return (-A.transpose() * gc - gc * A + Finv.transpose() * dG * Finv).eval();
  };
  return out;
}

}  // namespace geofol
