#pragma once
// Planar (2-D) quadrotor in body-frame velocity coordinates.
// State x = (p_x, p_z, phi, v_x, v_z, phidot); inputs are the two rotor
// thrusts.  The translational velocities are expressed in the body frame,
// which makes the input matrix B constant.

#include "rccm/model.hpp"

namespace rccm {

struct QuadrotorParams {
  double mass = 0.486;      // kg
  double inertia = 0.00383; // kg m^2
  double arm = 0.25;        // m, rotor moment arm
  double gravity = 9.81;    // m/s^2
};

// Indices into the quadrotor state vector.
enum QuadState { kPx = 0, kPz = 1, kPhi = 2, kVx = 3, kVz = 4, kOm = 5 };

// Builds the SystemModel with analytic df/dx, constant B, and the domain
// boxes X = [0,15]^2 x [-pi/3,pi/3] x [-2,2] x [-1,1] x [-pi/3,pi/3],
// U = [0, 1.5 m g]^2.
SystemModel quadrotor_model(const QuadrotorParams& p = {});

// Velocity-dependent rotor disturbance acting like drag-induced thrust
// offset: d(x) = 0.5 (v_x^2 + v_z^2) / (p_x^2 + p_z^2 + 1) * [1, 1]^T,
// with L_d = 4 and b_d = 3.54 on the state box above.
DisturbanceField quadrotor_drag_disturbance();

// Rest ("trim") state at a given position: zero attitude and velocity.
Vec quadrotor_trim_state(double px, double pz);

// Rotor thrusts that hold the trim state given a disturbance estimate
// d_hat at that state (total thrust m g minus estimated disturbance, zero
// net moment): u1 + d1 = u2 + d2 = m g / 2.
Vec quadrotor_trim_input(const QuadrotorParams& p, const Vec& d_hat);

}  // namespace rccm
