#pragma once
// Riemannian geodesic between the reference state x* and the current state
// x under the metric M(x) = W(x)^{-1}, solved by a Chebyshev pseudospectral
// discretization.
//
// The curve gamma : [0,1] -> R^n, gamma(0) = x*, gamma(1) = x, is expanded
// per coordinate in Chebyshev polynomials T_j(2s-1).  The two endpoint
// interpolation constraints eliminate the highest even- and odd-degree
// coefficients, so the energy
//     E = int_0^1 gamma_s' M(gamma) gamma_s ds
// (Clenshaw-Curtis quadrature on Chebyshev-Gauss-Lobatto nodes) is
// minimized over the remaining coefficients by a damped Gauss-Newton
// iteration with the exact analytic gradient and a frozen-metric Hessian.

#include <utility>

#include "rccm/metric.hpp"

namespace rccm {

struct GeodesicSolverConfig {
  int basis_order = 6;       // Chebyshev coefficients per coordinate (degrees 0..5)
  int quadrature_order = 8;  // CGL quadrature order (order+1 nodes)
  double grad_tol = 1e-8;    // stationarity: ||grad||_inf <= grad_tol * max(1, E)
  int max_iters = 100;
};

struct GeodesicCurve {
  Mat coeffs;  // n x basis_order, Chebyshev coefficients in T_j(2s-1)
  double energy = 0.0;
  int iters = 0;
  bool converged = false;

  Vec gamma(double s) const;      // curve point
  Vec dgamma_ds(double s) const;  // derivative w.r.t. s
};

class GeodesicSolver {
 public:
  GeodesicSolver(const MetricPolynomial* metric, GeodesicSolverConfig cfg = {});

  // Cold start from the straight line x* -> x.
  GeodesicCurve solve(const Vec& xstar, const Vec& x) const;
  // Warm start from a previous solution's coefficients (endpoint rows are
  // re-derived from the new x*, x).
  GeodesicCurve solve_warm(const Vec& xstar, const Vec& x, const GeodesicCurve& prev) const;

  // alpha1 * ||x - x*||^2 <= E for any admissible curve.
  double energy_lower_bound(const Vec& xstar, const Vec& x) const;

  // Discretized energy of a given coefficient matrix (exposed for tests).
  double energy_of(const Mat& coeffs) const;

  const GeodesicSolverConfig& config() const { return cfg_; }

 private:
  GeodesicCurve run(const Vec& xstar, const Vec& x, Mat coeffs) const;
  Mat straight_line(const Vec& xstar, const Vec& x) const;
  void enforce_endpoints(Mat& coeffs, const Vec& xstar, const Vec& x) const;

  const MetricPolynomial* mp_;
  GeodesicSolverConfig cfg_;
  int n_free_;                 // basis_order - 2
  int elim_even_, elim_odd_;   // coefficient indices fixed by the endpoints
  std::vector<int> free_idx_;
  Vec nodes_;    // CGL nodes in xi = 2s-1
  Vec weights_;  // Clenshaw-Curtis weights on [-1, 1]
  Mat Tval_;     // basis_order x nodes: T_j(xi_q)
  Mat Tder_;     // basis_order x nodes: T_j'(xi_q)
};

// First variation of the energy with respect to the endpoints:
// returns (gamma_s(1)' M(x), gamma_s(0)' M(x*)).  The time derivative of
// the energy along endpoint motions is
//   dE/dt = 2 gamma_s(1)' M(x) xdot - 2 gamma_s(0)' M(x*) xstar_dot.
std::pair<Vec, Vec> first_variation_terms(const GeodesicCurve& geo, const MetricPolynomial& mp);

// Chebyshev helpers shared with tests.
double cheb_T(int j, double xi);
double cheb_T_deriv(int j, double xi);
// Clenshaw-Curtis nodes/weights on [-1,1] for a given order (order+1 nodes).
void clenshaw_curtis(int order, Vec& nodes, Vec& weights);

}  // namespace rccm
