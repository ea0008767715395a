#pragma once
// Control-affine system description  xdot = f(x) + B(x) (u + d(x))
// with coordinate-box state/input domains, plus fixed-step RK4 utilities.

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace rccm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Axis-aligned box; used for the state domain X and the input set U.
struct Box {
  Vec lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }
  bool contains(const Vec& x, double tol = 0.0) const;
  // Smallest signed distance from x to the box faces (negative outside).
  double margin(const Vec& x) const;
  Vec clamp(const Vec& x) const;
  Vec center() const { return 0.5 * (lo + hi); }
};

struct SystemModel {
  int n = 0;  // state dimension
  int m = 0;  // input dimension
  std::function<Vec(const Vec&)> f;     // drift
  std::function<Mat(const Vec&)> B;     // input matrix, n x m
  // Optional analytic Jacobian df/dx; when absent consumers fall back to
  // central finite differences.
  std::function<Mat(const Vec&)> dfdx;
  bool constant_B = false;
  Box state_box;
  Box input_box;
  std::string name;
};

// Matched disturbance d(x) entering through B, with its declared bounds:
// ||d(x)|| <= b_d and Lipschitz constant L_d on the state box.
struct DisturbanceField {
  std::function<Vec(const Vec&)> d;  // null => identically zero
  double L_d = 0.0;
  double b_d = 0.0;

  Vec eval(const Vec& x, int m) const {
    return d ? d(x) : Vec::Zero(m);
  }
};

// xdot = f(x) + B(x) (u + d(x))
Vec true_derivative(const SystemModel& model, const DisturbanceField& dist, const Vec& x,
                    const Vec& u);

// Central-difference Jacobian of f, used when model.dfdx is absent.
Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double rel_step = 1e-6);

// One classic RK4 step of xdot = deriv(x) with u and everything else frozen
// inside the step.
Vec rk4_step(const std::function<Vec(const Vec&)>& deriv, const Vec& x, double dt);

}  // namespace rccm
