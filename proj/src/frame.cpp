#include "geofol/core/types.hpp"

#include <Eigen/Eigenvalues>

namespace geofol {

Mat fd_jacobian(const std::function<Vec(const ChartPoint&)>& f, const ChartPoint& p,
                double h) {
  const int n = static_cast<int>(p.size());
  const int m = static_cast<int>(f(p).size());
  Mat J(m, n);
  for (int j = 0; j < n; ++j) {
    ChartPoint pp = p, pm = p;
    const double hj = h * (1.0 + std::abs(p[j]));
    pp[j] += hj;
    pm[j] -= hj;
    J.col(j) = (f(pp) - f(pm)) / (2.0 * hj);
  }
  return J;
}

Mat fd_jacobian_rich(const std::function<Vec(const ChartPoint&)>& f, const ChartPoint& p,
                     double h) {
  const Mat J1 = fd_jacobian(f, p, h);
  const Mat J2 = fd_jacobian(f, p, h / 2.0);
  return (4.0 * J2 - J1) / 3.0;
}

VectorField with_fd_jacobian(int dim, std::string name,
                             std::function<Vec(const ChartPoint&)> value) {
  VectorField X;
  X.dim = dim;
  X.name = std::move(name);
  X.value = value;
  X.jacobian = [value](const ChartPoint& p) { return fd_jacobian_rich(value, p); };
  return X;
}

VectorField constant_field(int dim, std::string name, const Vec& components) {
  VectorField X;
  X.dim = dim;
  X.name = std::move(name);
  Vec c = components;
  X.value = [c](const ChartPoint&) { return c; };
  X.jacobian = [dim](const ChartPoint&) { return Mat::Zero(dim, dim); };
  return X;
}

Mat frame_matrix(const FrameSpec& frame, const ChartPoint& p) {
  const int n = frame.dim;
  Mat F(n, n);
  for (int j = 0; j < n; ++j) F.col(j) = frame.fields[j].value(p);
  const double d = F.determinant();
  if (std::abs(d) < frame.det_floor)
    throw std::runtime_error("frame '" + frame.name + "' near-singular: |det| = " +
                             std::to_string(std::abs(d)));
  return F;
}

Vec lie_bracket(const VectorField& A, const VectorField& B, const ChartPoint& p) {
  if (A.dim != B.dim || A.dim != p.size())
    throw std::invalid_argument("lie_bracket: dimension mismatch");
  return B.jacobian(p) * A.value(p) - A.jacobian(p) * B.value(p);
}

SignatureTriple signature(const Mat& S, double rel_tol) {
  if ((S - S.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, S.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("signature: input not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es(S, Eigen::EigenvaluesOnly);
  const Vec w = es.eigenvalues();
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  SignatureTriple sig;
  for (int i = 0; i < w.size(); ++i) {
    if (std::abs(w[i]) < rel_tol * scale)
      ++sig.zero;
    else if (w[i] > 0)
      ++sig.plus;
    else
      ++sig.minus;
  }
  return sig;
}

double metric_pair(const MetricModel& g, const Vec& a_coord, const Vec& b_coord,
                   const ChartPoint& p) {
  const Mat F = frame_matrix(g.frame, p);
  const Vec a = F.partialPivLu().solve(a_coord);
  const Vec b = F.partialPivLu().solve(b_coord);
  return a.dot(g.gram(p) * b);
}

Mat coordinate_gram(const MetricModel& g, const ChartPoint& p) {
  const Mat F = frame_matrix(g.frame, p);
  const Mat Finv = F.partialPivLu().inverse();
  return Finv.transpose() * g.gram(p) * Finv;
}

Vec flat(const MetricModel& g, const VectorField& X, const ChartPoint& p) {
  return flat(g, X.value(p), p);
}

Vec flat(const MetricModel& g, const Vec& x_coord, const ChartPoint& p) {
  return coordinate_gram(g, p) * x_coord;
}

Vec sharp(const MetricModel& g, const Vec& covector, const ChartPoint& p) {
  const Mat gc = coordinate_gram(g, p);
  const double d = gc.determinant();
  if (std::abs(d) < g.det_floor)
    throw std::runtime_error("sharp: metric '" + g.name + "' degenerate at sample point");
  return gc.partialPivLu().solve(covector);
}

}  // namespace geofol
