#include "rccm/model.hpp"

#include <cmath>
#include <stdexcept>

namespace rccm {

bool Box::contains(const Vec& x, double tol) const {
  for (int i = 0; i < dim(); ++i)
    if (x[i] < lo[i] - tol || x[i] > hi[i] + tol) return false;
  return true;
}

double Box::margin(const Vec& x) const {
  double m = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dim(); ++i) {
    m = std::min(m, x[i] - lo[i]);
    m = std::min(m, hi[i] - x[i]);
  }
  return m;
}

Vec Box::clamp(const Vec& x) const {
  return x.cwiseMax(lo).cwiseMin(hi);
}

Vec true_derivative(const SystemModel& model, const DisturbanceField& dist, const Vec& x,
                    const Vec& u) {
  return model.f(x) + model.B(x) * (u + dist.eval(x, model.m));
}

Mat fd_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double rel_step) {
  const int n = static_cast<int>(x.size());
  Vec f0 = f(x);
  Mat J(f0.size(), n);
  for (int k = 0; k < n; ++k) {
    double h = rel_step * std::max(1.0, std::abs(x[k]));
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    J.col(k) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return J;
}

Vec rk4_step(const std::function<Vec(const Vec&)>& deriv, const Vec& x, double dt) {
  Vec k1 = deriv(x);
  Vec k2 = deriv(x + 0.5 * dt * k1);
  Vec k3 = deriv(x + 0.5 * dt * k2);
  Vec k4 = deriv(x + dt * k3);
  return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace rccm
