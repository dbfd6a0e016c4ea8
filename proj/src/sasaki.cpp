#include "geofol/models/sasaki.hpp"

#include <cmath>

namespace geofol {

namespace {

// A(x, v)^k_i = Γ^k_{ij}(x) v^j.
Mat gamma_contraction(const CoordMetric& base, const ChartPoint& x,
                      const Vec& v) {
  const int n = base.dim;
  const std::vector<Mat> Gm = christoffels(base, x);
  Mat A = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) A(k, i) = Gm[(std::size_t)k].row(i).dot(v);
  return A;
}

}  // namespace

Vec connection_map(const CoordMetric& base, const ChartPoint& x, const Vec& v,
                   const Vec& xd, const Vec& vd) {
  return vd + gamma_contraction(base, x, v) * xd;
}

Mat sasaki_matrix(const CoordMetric& base, const ChartPoint& x, const Vec& v) {
  const int n = base.dim;
  const Mat g = base.value(x);
  const Mat A = gamma_contraction(base, x, v);
  Mat G = Mat::Zero(2 * n, 2 * n);
  G.topLeftCorner(n, n) = g + A.transpose() * g * A;
  G.topRightCorner(n, n) = A.transpose() * g;
  G.bottomLeftCorner(n, n) = g * A;
  G.bottomRightCorner(n, n) = g;
  return G;
}

Mat sasaki_matrix_apply(const CoordMetric& base, const ChartPoint& x,
                        const Vec& v) {
  const int n = base.dim;
  const Mat g = base.value(x);
  Mat G = Mat::Zero(2 * n, 2 * n);
  auto pair = [&](const Vec& xd1, const Vec& vd1, const Vec& xd2,
                  const Vec& vd2) {
    const Vec k1 = connection_map(base, x, v, xd1, vd1);
    const Vec k2 = connection_map(base, x, v, xd2, vd2);
    return xd1.dot(g * xd2) + k1.dot(g * k2);
  };
  const Vec zero = Vec::Zero(n);
  for (int i = 0; i < 2 * n; ++i) {
    Vec xd1 = zero, vd1 = zero;
    (i < n ? xd1[i] : vd1[i - n]) = 1.0;
    for (int j = 0; j < 2 * n; ++j) {
      Vec xd2 = zero, vd2 = zero;
      (j < n ? xd2[j] : vd2[j - n]) = 1.0;
      G(i, j) = pair(xd1, vd1, xd2, vd2);
    }
  }
  return G;
}

CoordMetric sasaki_metric(const CoordMetric& base) {
  CoordMetric total;
  total.name = "sasaki(" + base.name + ")";
  total.dim = 2 * base.dim;
  const CoordMetric b = base;
  total.value = [b](const ChartPoint& y) {
    const int n = b.dim;
    return sasaki_matrix(b, y.head(n), y.tail(n));
  };
  // partial left empty: christoffels() falls back to finite differences.
  return total;
}

LiftCheckResult tangent_lift_check(const CoordMetric& base,
                                   const Trajectory& geodesic, int n_samples) {
  LiftCheckResult out;
  const int n = base.dim;
  const CoordMetric total = sasaki_metric(base);
  const std::size_t N = geodesic.state.size();
  if (N == 0 || !geodesic.is_geodesic) return out;
  out.base_energy = geodesic.energy.empty() ? 0.0 : geodesic.energy.front();

  // d/ds Γ-contraction term of c̈ needs ∂Γ; centred differences on the
  // assembled acceleration keep this second-derivative-free.
  // True geodesic acceleration: γ̈ = −Γ(γ̇, γ̇).
  auto accel = [&](const ChartPoint& p, const Vec& v) {
    return Vec(-geodesic_acceleration(base, p, v));
  };

  const std::size_t stride = std::max<std::size_t>(1, N / (std::size_t)n_samples);
  for (std::size_t idx = 0; idx < N; idx += stride) {
    const ChartPoint p = geodesic.point(idx);
    const Vec v = geodesic.velocity(idx);
    const Vec acc = accel(p, v);  // γ̈

    // Lifted curve c = (γ, γ̇): ċ = (γ̇, γ̈),
    // c̈ = (γ̈, d/ds γ̈) with d/ds γ̈ by a central difference of the
    // acceleration along the analytic local solution direction.
    const double h = 1e-5;
    ChartPoint pp = p + h * v + 0.5 * h * h * acc;
    ChartPoint pm = p - h * v + 0.5 * h * h * acc;
    Vec vp = v + h * acc;
    Vec vm = v - h * acc;
    const Vec dacc = (accel(pp, vp) - accel(pm, vm)) / (2 * h);

    Vec c(2 * n), cd(2 * n), cdd(2 * n);
    c.head(n) = p;
    c.tail(n) = v;
    cd.head(n) = v;
    cd.tail(n) = acc;
    cdd.head(n) = acc;
    cdd.tail(n) = dacc;

    // A ḡ-geodesic satisfies c̈ = −Γ̄(ċ, ċ).
    const Vec gam = geodesic_acceleration(total, c, cd);
    out.max_residual = std::max(out.max_residual, (cdd + gam).norm());

    const double gbar = cd.dot(sasaki_matrix(base, p, v) * cd);
    const double gbase = v.dot(base.value(p) * v);
    out.max_energy_mismatch =
        std::max(out.max_energy_mismatch, std::abs(gbar - gbase));
    ++out.samples;
  }
  return out;
}

SplitCheckResult sasaki_split_checks(const CoordMetric& base,
                                     const ChartPoint& x, const Vec& v) {
  SplitCheckResult out;
  const int n = base.dim;
  const Mat g = base.value(x);
  const Mat A = gamma_contraction(base, x, v);
  const Mat G = sasaki_matrix(base, x, v);
  out.assembly_err = (G - sasaki_matrix_apply(base, x, v)).cwiseAbs().maxCoeff();

  for (int i = 0; i < n; ++i) {
    Vec hi(2 * n), vi(2 * n);
    hi.head(n) = Vec::Unit(n, i);
    hi.tail(n) = -A.col(i);  // horizontal lift of e_i: K = 0
    vi.setZero();
    vi[n + i] = 1.0;
    for (int j = 0; j < n; ++j) {
      Vec hj(2 * n), vj(2 * n);
      hj.head(n) = Vec::Unit(n, j);
      hj.tail(n) = -A.col(j);
      vj.setZero();
      vj[n + j] = 1.0;
      out.horizontal_push_err = std::max(
          out.horizontal_push_err, std::abs(hi.dot(G * hj) - g(i, j)));
      out.vertical_err =
          std::max(out.vertical_err, std::abs(vi.dot(G * vj) - g(i, j)));
      out.ortho_err = std::max(out.ortho_err, std::abs(hi.dot(G * vj)));
    }
  }
  return out;
}

}  // namespace geofol
