#include "rccm/quadrotor.hpp"

#include <cmath>

namespace rccm {

SystemModel quadrotor_model(const QuadrotorParams& p) {
  SystemModel mdl;
  mdl.n = 6;
  mdl.m = 2;
  mdl.name = "planar-quadrotor";
  const double g = p.gravity;

  mdl.f = [g](const Vec& x) {
    const double c = std::cos(x[kPhi]), s = std::sin(x[kPhi]);
    const double vx = x[kVx], vz = x[kVz], om = x[kOm];
    Vec f(6);
    f[0] = vx * c - vz * s;
    f[1] = vx * s + vz * c;
    f[2] = om;
    f[3] = vz * om - g * s;
    f[4] = -vx * om - g * c;
    f[5] = 0.0;
    return f;
  };

  Mat B = Mat::Zero(6, 2);
  B(kVz, 0) = 1.0 / p.mass;
  B(kVz, 1) = 1.0 / p.mass;
  B(kOm, 0) = p.arm / p.inertia;
  B(kOm, 1) = -p.arm / p.inertia;
  mdl.B = [B](const Vec&) { return B; };
  mdl.constant_B = true;

  mdl.dfdx = [g](const Vec& x) {
    const double c = std::cos(x[kPhi]), s = std::sin(x[kPhi]);
    const double vx = x[kVx], vz = x[kVz], om = x[kOm];
    Mat A = Mat::Zero(6, 6);
    A(0, kPhi) = -vx * s - vz * c;
    A(0, kVx) = c;
    A(0, kVz) = -s;
    A(1, kPhi) = vx * c - vz * s;
    A(1, kVx) = s;
    A(1, kVz) = c;
    A(2, kOm) = 1.0;
    A(3, kPhi) = -g * c;
    A(3, kVz) = om;
    A(3, kOm) = vz;
    A(4, kPhi) = g * s;
    A(4, kVx) = -om;
    A(4, kOm) = -vx;
    return A;
  };

  const double phi_max = M_PI / 3.0;
  mdl.state_box.lo = Vec(6);
  mdl.state_box.hi = Vec(6);
  mdl.state_box.lo << 0, 0, -phi_max, -2, -1, -phi_max;
  mdl.state_box.hi << 15, 15, phi_max, 2, 1, phi_max;

  const double u_max = 1.5 * p.mass * p.gravity;
  mdl.input_box.lo = Vec::Zero(2);
  mdl.input_box.hi = Vec::Constant(2, u_max);
  return mdl;
}

DisturbanceField quadrotor_drag_disturbance() {
  DisturbanceField dist;
  dist.d = [](const Vec& x) {
    const double v2 = x[kVx] * x[kVx] + x[kVz] * x[kVz];
    const double r2 = x[kPx] * x[kPx] + x[kPz] * x[kPz];
    return Vec::Constant(2, 0.5 * v2 / (r2 + 1.0));
  };
  dist.L_d = 4.0;
  dist.b_d = 3.54;
  return dist;
}

Vec quadrotor_trim_state(double px, double pz) {
  Vec x = Vec::Zero(6);
  x[kPx] = px;
  x[kPz] = pz;
  return x;
}

Vec quadrotor_trim_input(const QuadrotorParams& p, const Vec& d_hat) {
  return Vec::Constant(2, 0.5 * p.mass * p.gravity) - d_hat;
}

}  // namespace rccm
