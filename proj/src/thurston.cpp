#include "geofol/models/thurston.hpp"

#include <cmath>

namespace geofol {
namespace thurston {

namespace {
constexpr double kPi = 3.14159265358979323846;
}  // namespace

VectorField V1() {
  VectorField f;
  f.dim = kDim;
  f.name = "V1";
  f.value = [](const ChartPoint& p) {
    Vec v = Vec::Zero(kDim);
    const double t = p[kT];
    v[kX] = std::cos(t);
    v[kY] = std::sin(t);
    v[kZ] = p[kX] * std::sin(t);
    return v;
  };
  f.jacobian = [](const ChartPoint& p) {
    Mat J = Mat::Zero(kDim, kDim);
    const double t = p[kT];
    J(kX, kT) = -std::sin(t);
    J(kY, kT) = std::cos(t);
    J(kZ, kX) = std::sin(t);
    J(kZ, kT) = p[kX] * std::cos(t);
    return J;
  };
  return f;
}

VectorField V2() {
  VectorField f;
  f.dim = kDim;
  f.name = "V2";
  f.value = [](const ChartPoint& p) {
    Vec v = Vec::Zero(kDim);
    const double t = p[kT];
    v[kX] = -std::sin(t);
    v[kY] = std::cos(t);
    v[kZ] = p[kX] * std::cos(t);
    return v;
  };
  f.jacobian = [](const ChartPoint& p) {
    Mat J = Mat::Zero(kDim, kDim);
    const double t = p[kT];
    J(kX, kT) = -std::cos(t);
    J(kY, kT) = -std::sin(t);
    J(kZ, kX) = std::cos(t);
    J(kZ, kT) = -p[kX] * std::sin(t);
    return J;
  };
  return f;
}

VectorField coord(int index) {
  Vec e = Vec::Zero(kDim);
  e[index] = 1.0;
  static const char* names[] = {"dx", "dy", "dz", "dt", "du"};
  return constant_field(kDim, names[index], e);
}

// X = sin(2u) V1 + 2 sin^2(u) dt - cos^2(u) dz, written out in coordinates.
VectorField X() {
  VectorField f;
  f.dim = kDim;
  f.name = "X";
  f.value = [](const ChartPoint& p) {
    const double t = p[kT], u = p[kU];
    const double s2u = std::sin(2.0 * u), s = std::sin(u), c = std::cos(u);
    Vec v = Vec::Zero(kDim);
    v[kX] = s2u * std::cos(t);
    v[kY] = s2u * std::sin(t);
    v[kZ] = s2u * p[kX] * std::sin(t) - c * c;
    v[kT] = 2.0 * s * s;
    return v;
  };
  f.jacobian = [](const ChartPoint& p) {
    const double t = p[kT], u = p[kU];
    const double s2u = std::sin(2.0 * u), c2u = std::cos(2.0 * u);
    Mat J = Mat::Zero(kDim, kDim);
    J(kX, kT) = -s2u * std::sin(t);
    J(kX, kU) = 2.0 * c2u * std::cos(t);
    J(kY, kT) = s2u * std::cos(t);
    J(kY, kU) = 2.0 * c2u * std::sin(t);
    J(kZ, kX) = s2u * std::sin(t);
    J(kZ, kT) = s2u * p[kX] * std::cos(t);
    J(kZ, kU) = 2.0 * c2u * p[kX] * std::sin(t) + s2u;  // d(-cos^2 u)/du = sin(2u)
    J(kT, kU) = 2.0 * s2u;                              // d(2 sin^2 u)/du
    return J;
  };
  return f;
}

VectorField W() {
  VectorField f;
  f.dim = kDim;
  f.name = "W";
  auto k_of = [](double u) {
    const double s = std::sin(u);
    if (s == 0.0) throw std::domain_error("W undefined on the bad set (u in pi*Z)");
    return std::cos(u) / s;
  };
  f.value = [k_of](const ChartPoint& p) {
    const double t = p[kT], k = k_of(p[kU]);
    Vec v = Vec::Zero(kDim);
    v[kX] = k * std::cos(t);
    v[kY] = k * std::sin(t);
    v[kZ] = k * p[kX] * std::sin(t) - 0.5 * k * k;
    v[kT] = 1.0;
    return v;
  };
  f.jacobian = [k_of](const ChartPoint& p) {
    const double t = p[kT], u = p[kU], k = k_of(u);
    const double s = std::sin(u);
    const double dk = -1.0 / (s * s);  // d (cos/sin) / du
    Mat J = Mat::Zero(kDim, kDim);
    J(kX, kT) = -k * std::sin(t);
    J(kX, kU) = dk * std::cos(t);
    J(kY, kT) = k * std::cos(t);
    J(kY, kU) = dk * std::sin(t);
    J(kZ, kX) = k * std::sin(t);
    J(kZ, kT) = k * p[kX] * std::cos(t);
    J(kZ, kU) = dk * p[kX] * std::sin(t) - k * dk;
    return J;
  };
  return f;
}

VectorField Xf(const CutoffPair& f) {
  VectorField out;
  out.dim = kDim;
  out.name = std::string("X_") + f.name;
  const CutoffPair cp = f;
  out.value = [cp](const ChartPoint& p) {
    const double t = p[kT], u = p[kU];
    const double fv = cp.f(u), c = std::cos(u);
    const double a = 2.0 * fv * c;  // V1 coefficient
    Vec v = Vec::Zero(kDim);
    v[kX] = a * std::cos(t);
    v[kY] = a * std::sin(t);
    v[kZ] = a * p[kX] * std::sin(t) - c * c;
    v[kT] = 2.0 * fv * fv;
    return v;
  };
  out.jacobian = [cp](const ChartPoint& p) {
    const double t = p[kT], u = p[kU];
    const double fv = cp.f(u), dfv = cp.df(u), c = std::cos(u), s = std::sin(u);
    const double a = 2.0 * fv * c;
    const double da = 2.0 * (dfv * c - fv * s);
    Mat J = Mat::Zero(kDim, kDim);
    J(kX, kT) = -a * std::sin(t);
    J(kX, kU) = da * std::cos(t);
    J(kY, kT) = a * std::cos(t);
    J(kY, kU) = da * std::sin(t);
    J(kZ, kX) = a * std::sin(t);
    J(kZ, kT) = a * p[kX] * std::cos(t);
    J(kZ, kU) = da * p[kX] * std::sin(t) + 2.0 * s * c;
    J(kT, kU) = 4.0 * fv * dfv;
    return J;
  };
  return out;
}

VectorField Wf(const CutoffPair& f) {
  VectorField out;
  out.dim = kDim;
  out.name = std::string("W_") + f.name;
  const CutoffPair cp = f;
  auto k_of = [cp](double u) {
    const double fv = cp.f(u);
    if (fv == 0.0)
      throw std::domain_error("W_" + std::string(cp.name) +
                              " undefined on the bad set (profile vanishes)");
    return std::cos(u) / fv;
  };
  out.value = [k_of](const ChartPoint& p) {
    const double t = p[kT], k = k_of(p[kU]);
    Vec v = Vec::Zero(kDim);
    v[kX] = k * std::cos(t);
    v[kY] = k * std::sin(t);
    v[kZ] = k * p[kX] * std::sin(t) - 0.5 * k * k;
    v[kT] = 1.0;
    return v;
  };
  out.jacobian = [k_of, cp](const ChartPoint& p) {
    const double t = p[kT], u = p[kU], k = k_of(u);
    const double fv = cp.f(u), dfv = cp.df(u), s = std::sin(u);
    const double dk = (-s * fv - std::cos(u) * dfv) / (fv * fv);
    Mat J = Mat::Zero(kDim, kDim);
    J(kX, kT) = -k * std::sin(t);
    J(kX, kU) = dk * std::cos(t);
    J(kY, kT) = k * std::cos(t);
    J(kY, kU) = dk * std::sin(t);
    J(kZ, kX) = k * std::sin(t);
    J(kZ, kT) = k * p[kX] * std::cos(t);
    J(kZ, kU) = dk * p[kX] * std::sin(t) - k * dk;
    return J;
  };
  return out;
}

VectorField Yfield(const CutoffPair& f) {
  VectorField out;
  out.dim = kDim;
  out.name = std::string("Y_") + f.name;
  const CutoffPair cp = f;
  out.value = [cp](const ChartPoint& p) {
    const double u = p[kU], c = std::cos(u);
    Vec v = Vec::Zero(kDim);
    v[kT] = -c * c;
    v[kU] = 2.0 * cp.f(u) * cp.fabs(u);
    return v;
  };
  out.jacobian = [cp](const ChartPoint& p) {
    const double u = p[kU];
    Mat J = Mat::Zero(kDim, kDim);
    J(kT, kU) = std::sin(2.0 * u);
    J(kU, kU) = 2.0 * (cp.df(u) * cp.fabs(u) + cp.f(u) * cp.dfabs(u));
    return J;
  };
  return out;
}

FrameSpec base_frame() {
  FrameSpec fr;
  fr.dim = kDim;
  fr.name = "base(dt,V1,V2,dz,du)";
  fr.fields = {coord(kT), V1(), V2(), coord(kZ), coord(kU)};
  return fr;
}

FrameSpec orth_frame(const CutoffPair& f) {
  FrameSpec fr;
  fr.dim = kDim;
  fr.name = std::string("orth(W_") + f.name + ",V1,V2,dz,Y)";
  fr.fields = {Wf(f), V1(), V2(), coord(kZ), Yfield(f)};
  return fr;
}

FrameSpec lightlike_frame() {
  FrameSpec fr;
  fr.dim = kDim;
  fr.name = "lightlike(X,du,V1,V2,2dt+dz)";
  Vec tdir = Vec::Zero(kDim);
  tdir[kT] = 2.0;
  tdir[kZ] = 1.0;
  fr.fields = {X(), coord(kU), V1(), V2(), constant_field(kDim, "2dt+dz", tdir)};
  return fr;
}

ChartPoint exact_flow_k(double k, const ChartPoint& p, double s) {
  const double t = p[kT];
  // All increments are 2pi-periodic in s, so the trigonometric phases use
  // s reduced mod 2pi.  This keeps returns at exact 2pi-multiples exactly
  // closed even when k^2 is huge (deep-cutoff leaves), where an O(ulp) phase
  // error would otherwise be amplified beyond any tolerance.
  const double sr = std::remainder(s, 2.0 * kPi);
  ChartPoint q = p;
  q[kX] = p[kX] + k * (std::sin(t + sr) - std::sin(t));
  q[kY] = p[kY] + k * (std::cos(t) - std::cos(t + sr));
  q[kZ] = p[kZ] +
          k * k * (std::sin(2.0 * t) - std::sin(2.0 * t + 2.0 * sr)) / 4.0 +
          k * k * std::sin(t) * (std::cos(t + sr) - std::cos(t)) +
          k * p[kX] * (std::cos(t) - std::cos(t + sr));
  q[kT] = t + s;
  return q;
}

ChartPoint exact_flow_w(const ChartPoint& p, double s) {
  const double su = std::sin(p[kU]);
  if (su == 0.0) throw std::domain_error("exact_flow_w: bad-set start");
  return exact_flow_k(std::cos(p[kU]) / su, p, s);
}

ChartPoint exact_flow_wf(const CutoffPair& f, const ChartPoint& p, double s) {
  const double fv = f.f(p[kU]);
  if (fv == 0.0) throw std::domain_error("exact_flow_wf: bad-set start");
  return exact_flow_k(std::cos(p[kU]) / fv, p, s);
}

ChartPoint lattice_act(const Eigen::Matrix<long, 5, 1>& word, const ChartPoint& p) {
  ChartPoint q = p;
  const double a = static_cast<double>(word[0]);
  const double b = static_cast<double>(word[1]);
  const double c = static_cast<double>(word[2]);
  q[kX] += a;
  q[kY] += b;
  q[kZ] += c + a * p[kY];
  q[kT] += 2.0 * kPi * static_cast<double>(word[3]);
  q[kU] += 2.0 * kPi * static_cast<double>(word[4]);
  return q;
}

Vec lattice_act_diff(const Eigen::Matrix<long, 5, 1>& word, const Vec& v) {
  Vec w = v;
  w[kZ] += static_cast<double>(word[0]) * v[kY];
  return w;
}

}  // namespace thurston
}  // namespace geofol
