#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace geofol {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// A point of an n-dimensional chart is just its coordinate vector.
// For the 5-manifold model the order is (x, y, z, t, u).
using ChartPoint = Vec;

// Coordinate-expressed vector field with an analytic Jacobian.
// jacobian(p)(i,j) = d value_i / d coordinate_j.
struct VectorField {
  int dim = 0;
  std::string name;
  std::function<Vec(const ChartPoint&)> value;
  std::function<Mat(const ChartPoint&)> jacobian;  // may be empty; see with_fd_jacobian
};

// Central finite-difference Jacobian used as a fallback and as a cross-check
// against hand-coded Jacobians.
Mat fd_jacobian(const std::function<Vec(const ChartPoint&)>& f, const ChartPoint& p,
                double h = 1e-5);

// Richardson-extrapolated version (two central differences at h and h/2);
// accuracy ~1e-10 for smooth O(1) fields.
Mat fd_jacobian_rich(const std::function<Vec(const ChartPoint&)>& f, const ChartPoint& p,
                     double h = 1e-5);

VectorField with_fd_jacobian(int dim, std::string name,
                             std::function<Vec(const ChartPoint&)> value);

// Constant-coefficient coordinate field (e.g. a coordinate direction).
VectorField constant_field(int dim, std::string name, const Vec& components);

// A moving frame: n pointwise independent vector fields.
struct FrameSpec {
  int dim = 0;
  std::string name;
  std::vector<VectorField> fields;
  double det_floor = 1e-12;  // |det frame_matrix| must stay above this
};

// Matrix whose column j holds the coordinate components of frame field j at p.
// Throws if |det| falls below the frame's floor.
Mat frame_matrix(const FrameSpec& frame, const ChartPoint& p);

// [A,B]^i = A^j d_j B^i - B^j d_j A^i.
Vec lie_bracket(const VectorField& A, const VectorField& B, const ChartPoint& p);

// Metric given by its Gram matrix in a moving frame.
// gram_coord_partial(p, i) (optional) is the coordinate partial d_i of the Gram
// matrix; when absent, directional derivatives fall back to finite differences.
// structure(p, i, j) (optional) returns the frame coefficients c with
// [E_i, E_j] = sum_k c_k E_k at p; when absent the coordinate lie_bracket is
// used and converted through the frame matrix.
struct MetricModel {
  std::string name;
  FrameSpec frame;
  std::function<Mat(const ChartPoint&)> gram;
  std::function<Mat(const ChartPoint&, int)> gram_coord_partial;  // optional
  std::function<Vec(const ChartPoint&, int, int)> structure;      // optional
  double det_floor = 1e-12;
};

// Metric given directly by its coordinate-basis matrix.
// partial(p, i) (optional) is the analytic d_i g; finite differences otherwise.
struct CoordMetric {
  std::string name;
  int dim = 0;
  std::function<Mat(const ChartPoint&)> value;
  std::function<Mat(const ChartPoint&, int)> partial;  // optional
};

struct SignatureTriple {
  int plus = 0;
  int minus = 0;
  int zero = 0;
  bool operator==(const SignatureTriple&) const = default;
};

// Eigenvalue sign counts; |lambda| < tol * max(1, |lambda|_max) counts as zero.
// tol is relative to the largest eigenvalue magnitude (with a floor of 1 so
// that exactly-zero matrices classify as all-zero rather than dividing by 0).
SignatureTriple signature(const Mat& S, double rel_tol = 1e-9);

// g(A,B) at p for coordinate-expressed vectors under a frame metric:
// converts through the frame matrix.
double metric_pair(const MetricModel& g, const Vec& a_coord, const Vec& b_coord,
                   const ChartPoint& p);

// Coordinate Gram matrix of a frame metric: F^{-T} G F^{-1}.
Mat coordinate_gram(const MetricModel& g, const ChartPoint& p);

// Musical flat: coordinate cobasis components of g(X, .).
Vec flat(const MetricModel& g, const VectorField& X, const ChartPoint& p);
Vec flat(const MetricModel& g, const Vec& x_coord, const ChartPoint& p);

// Musical sharp: solves g(v, .) = omega for the coordinate components of v.
Vec sharp(const MetricModel& g, const Vec& covector, const ChartPoint& p);

}  // namespace geofol
