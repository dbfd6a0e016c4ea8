#pragma once

#include "geofol/core/types.hpp"
#include "geofol/models/cutoff.hpp"

namespace geofol {

// The 5-manifold chart (x, y, z, t, u): the Heisenberg nilmanifold times a
// 2-torus.  V1, V2 generate the left-invariant horizontal plane field,
// X = sin(2u) V1 + 2 sin^2(u) dt - cos^2(u) dz is the circle-foliation field,
// W = X / (2 sin^2 u) its reparametrization away from the bad set u in pi*Z.
// X_f, W_f are the same with the rotation profile driven by a CutoffPair f:
//   X_f = 2 f(u) cos(u) V1 + 2 f(u)^2 dt - cos^2(u) dz,  W_f = X_f / (2 f^2).
// Y = -cos^2(u) dt + 2 f fabs du completes the orthogonal frame of X_f.
namespace thurston {

constexpr int kDim = 5;
constexpr int kX = 0, kY = 1, kZ = 2, kT = 3, kU = 4;

VectorField V1();
VectorField V2();
VectorField coord(int index);                  // dx, dy, dz, dt, du
VectorField X();                               // sin(2u) V1 + 2 sin^2 u dt - cos^2 u dz
VectorField W();                               // X / (2 sin^2 u); undefined at u in pi*Z
VectorField Xf(const CutoffPair& f);           // cutoff-driven deformation
VectorField Wf(const CutoffPair& f);           // Xf / (2 f^2); undefined where f = 0
VectorField Yfield(const CutoffPair& f);       // -cos^2 u dt + 2 f fabs du

// Frame (dt, V1, V2, dz, du): the base frame in which G0 is written.
FrameSpec base_frame();

// Frame (W_f, V1, V2, dz, Y): the orthogonal frame of the type-change branch.
FrameSpec orth_frame(const CutoffPair& f);

// Frame (X, du, V1, V2, 2 dt + dz) carrying the constant lightlike Gram.
FrameSpec lightlike_frame();

// Closed-form flow of W (k = 1/tan u) or W_f (k = cos u / f(u)):
//   x += k (sin(t+s) - sin t)
//   y += k (cos t - cos(t+s))
//   z += k^2 (sin 2t - sin(2t+2s))/4 + k^2 sin t (cos(t+s) - cos t)
//        + k x0 (cos t - cos(t+s))
//   t += s, u unchanged.
// 2pi-periodic in s.  Throws on the bad set (k undefined).
ChartPoint exact_flow_w(const ChartPoint& p, double s);
ChartPoint exact_flow_wf(const CutoffPair& f, const ChartPoint& p, double s);
ChartPoint exact_flow_k(double k, const ChartPoint& p, double s);

// Heisenberg lattice action gamma = (a,b,c,kt,ku):
// (x,y,z,t,u) -> (x+a, y+b, z+c+a*y, t+2pi*kt, u+2pi*ku).
ChartPoint lattice_act(const Eigen::Matrix<long, 5, 1>& word, const ChartPoint& p);
// Differential of the action on velocities: (vx,vy,vz) -> (vx, vy, vz + a*vy).
Vec lattice_act_diff(const Eigen::Matrix<long, 5, 1>& word, const Vec& v);

struct LeafRow {
  double u0 = 0;
  double period = 0;            // parameter period of the W-type orbit
  double length = 0;            // auxiliary length normalizing the X-type field
  double normalized = 0;        // length * sin^2(u0), resp. length * 2 f(u0)^2
  double closure_residual = 0;
  bool closed = false;
};

}  // namespace thurston

}  // namespace geofol
