#include "rccm/geodesic.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rccm {

double cheb_T(int j, double xi) {
  if (j == 0) return 1.0;
  if (j == 1) return xi;
  double tm = 1.0, t = xi;
  for (int k = 2; k <= j; ++k) {
    double tn = 2.0 * xi * t - tm;
    tm = t;
    t = tn;
  }
  return t;
}

double cheb_T_deriv(int j, double xi) {
  // T_j' = j U_{j-1}
  if (j == 0) return 0.0;
  if (j == 1) return 1.0;
  double um = 1.0, u = 2.0 * xi;  // U_0, U_1
  for (int k = 2; k <= j - 1; ++k) {
    double un = 2.0 * xi * u - um;
    um = u;
    u = un;
  }
  return static_cast<double>(j) * u;
}

void clenshaw_curtis(int order, Vec& nodes, Vec& weights) {
  const int Q = order;
  if (Q < 2 || Q % 2 != 0) throw std::runtime_error("quadrature order must be even and >= 2");
  nodes.resize(Q + 1);
  weights.resize(Q + 1);
  for (int q = 0; q <= Q; ++q) {
    nodes[q] = -std::cos(M_PI * q / Q);  // ascending from -1 to 1
    double cq = (q == 0 || q == Q) ? 0.5 : 1.0;
    double sum = 0.0;
    for (int j = 1; j <= Q / 2; ++j) {
      double bj = (j == Q / 2) ? 1.0 : 2.0;
      sum += bj / (4.0 * j * j - 1.0) * std::cos(2.0 * M_PI * j * q / Q);
    }
    weights[q] = (2.0 / Q) * cq * (1.0 - sum);
  }
}

GeodesicSolver::GeodesicSolver(const MetricPolynomial* metric, GeodesicSolverConfig cfg)
    : mp_(metric), cfg_(cfg) {
  const int N = cfg_.basis_order;
  if (N < 4) throw std::runtime_error("basis_order must be >= 4");
  n_free_ = N - 2;
  elim_even_ = (N - 1) % 2 == 0 ? N - 1 : N - 2;
  elim_odd_ = (N - 1) % 2 == 1 ? N - 1 : N - 2;
  for (int j = 0; j < N; ++j)
    if (j != elim_even_ && j != elim_odd_) free_idx_.push_back(j);

  clenshaw_curtis(cfg_.quadrature_order, nodes_, weights_);
  const int Qn = static_cast<int>(nodes_.size());
  Tval_.resize(N, Qn);
  Tder_.resize(N, Qn);
  for (int j = 0; j < N; ++j)
    for (int q = 0; q < Qn; ++q) {
      Tval_(j, q) = cheb_T(j, nodes_[q]);
      Tder_(j, q) = cheb_T_deriv(j, nodes_[q]);
    }
}

Vec GeodesicCurve::gamma(double s) const {
  const double xi = 2.0 * s - 1.0;
  Vec out = Vec::Zero(coeffs.rows());
  for (int j = 0; j < coeffs.cols(); ++j) out += coeffs.col(j) * cheb_T(j, xi);
  return out;
}

Vec GeodesicCurve::dgamma_ds(double s) const {
  const double xi = 2.0 * s - 1.0;
  Vec out = Vec::Zero(coeffs.rows());
  for (int j = 0; j < coeffs.cols(); ++j) out += coeffs.col(j) * (2.0 * cheb_T_deriv(j, xi));
  return out;
}

Mat GeodesicSolver::straight_line(const Vec& xstar, const Vec& x) const {
  Mat C = Mat::Zero(xstar.size(), cfg_.basis_order);
  C.col(0) = 0.5 * (x + xstar);
  C.col(1) = 0.5 * (x - xstar);
  return C;
}

void GeodesicSolver::enforce_endpoints(Mat& C, const Vec& xstar, const Vec& x) const {
  // sum over even j of c_j = (x + x*)/2, sum over odd j = (x - x*)/2.
  Vec even_target = 0.5 * (x + xstar);
  Vec odd_target = 0.5 * (x - xstar);
  C.col(elim_even_).setZero();
  C.col(elim_odd_).setZero();
  Vec even_sum = Vec::Zero(x.size()), odd_sum = Vec::Zero(x.size());
  for (int j = 0; j < cfg_.basis_order; ++j) {
    if (j % 2 == 0)
      even_sum += C.col(j);
    else
      odd_sum += C.col(j);
  }
  C.col(elim_even_) = even_target - even_sum;
  C.col(elim_odd_) = odd_target - odd_sum;
}

namespace {

// Energy and PD flag at one coefficient matrix.  M_cache / dVdx reused by
// the gradient pass.
struct NodeEval {
  Vec gamma;
  Vec v;  // dgamma/ds
  Mat M;
  bool pd = true;
};

}  // namespace

double GeodesicSolver::energy_of(const Mat& C) const {
  const int Qn = static_cast<int>(nodes_.size());
  double E = 0.0;
  for (int q = 0; q < Qn; ++q) {
    Vec g = C * Tval_.col(q);
    Vec v = 2.0 * (C * Tder_.col(q));
    Mat Wm = mp_->W(g);
    Eigen::LDLT<Mat> ldlt(Wm);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
      return std::numeric_limits<double>::infinity();
    E += 0.5 * weights_[q] * v.dot(ldlt.solve(v));
  }
  return E;
}

GeodesicCurve GeodesicSolver::run(const Vec& xstar, const Vec& x, Mat C) const {
  const int n = static_cast<int>(xstar.size());
  const int Qn = static_cast<int>(nodes_.size());
  const int F = n_free_;
  const int dim = F * n;

  GeodesicCurve out;
  enforce_endpoints(C, xstar, x);

  // Basis values of the reduced (endpoint-respecting) basis functions
  // phi_a = T_a - T_elim(parity of a); their derivatives likewise.
  Mat Pval(F, Qn), Pder(F, Qn);
  for (int a = 0; a < F; ++a) {
    int j = free_idx_[a];
    int e = (j % 2 == 0) ? elim_even_ : elim_odd_;
    for (int q = 0; q < Qn; ++q) {
      Pval(a, q) = Tval_(j, q) - Tval_(e, q);
      Pder(a, q) = Tder_(j, q) - Tder_(e, q);
    }
  }

  double E = 0.0;
  Vec grad(dim);
  Mat H(dim, dim);
  std::vector<NodeEval> evals(Qn);

  auto evaluate = [&](const Mat& Cc, bool with_derivs) -> double {
    double energy = 0.0;
    for (int q = 0; q < Qn; ++q) {
      NodeEval& ne = evals[q];
      ne.gamma = Cc * Tval_.col(q);
      ne.v = 2.0 * (Cc * Tder_.col(q));
      Mat Wm = mp_->W(ne.gamma);
      Eigen::LDLT<Mat> ldlt(Wm);
      if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        return std::numeric_limits<double>::infinity();
      if (with_derivs) ne.M = ldlt.solve(Mat::Identity(n, n));
      energy += 0.5 * weights_[q] * ne.v.dot(ldlt.solve(ne.v));
    }
    return energy;
  };

  E = evaluate(C, true);
  if (!std::isfinite(E)) throw std::runtime_error("geodesic: metric not positive definite");

  int it = 0;
  for (; it < cfg_.max_iters; ++it) {
    // Gradient and frozen-metric Gauss-Newton Hessian over free coefficients.
    grad.setZero();
    H.setZero();
    for (int q = 0; q < Qn; ++q) {
      const NodeEval& ne = evals[q];
      const double wq = weights_[q];
      Vec Mv = ne.M * ne.v;
      // v' dM_c v per metric coordinate, shared across basis functions.
      std::vector<double> quad_dM(mp_->coords.size());
      for (size_t ci = 0; ci < mp_->coords.size(); ++ci) {
        Mat dM = mp_->dM(ne.gamma, mp_->coords[ci], ne.M);
        quad_dM[ci] = ne.v.dot(dM * ne.v);
      }
      // dE/dc_{a,i} = wq [ 2 phi_a' (M v)_i + (1/2) phi_a v' dM_i v ]
      for (int a = 0; a < F; ++a) {
        const double pv = Pval(a, q), pd = Pder(a, q);
        for (int i = 0; i < n; ++i) grad[a * n + i] += 2.0 * pd * Mv[i] * wq;
        if (pv != 0.0)
          for (size_t ci = 0; ci < mp_->coords.size(); ++ci)
            grad[a * n + mp_->coords[ci]] += 0.5 * wq * pv * quad_dM[ci];
      }
      for (int a = 0; a < F; ++a)
        for (int b = 0; b < F; ++b) {
          double s = 4.0 * wq * Pder(a, q) * Pder(b, q);
          if (s == 0.0) continue;
          H.block(a * n, b * n, n, n) += s * ne.M;
        }
    }

    if (grad.lpNorm<Eigen::Infinity>() <= cfg_.grad_tol * std::max(1.0, E)) {
      out.converged = true;
      break;
    }

    // Solve H step = -grad with escalating Levenberg damping if needed.
    Vec step;
    double damping = 0.0;
    for (int attempt = 0; attempt < 6; ++attempt) {
      Mat Hd = H;
      if (damping > 0.0) Hd.diagonal().array() += damping;
      Eigen::LDLT<Mat> ldlt(Hd);
      if (ldlt.info() == Eigen::Success) {
        step = ldlt.solve(-grad);
        if (step.allFinite()) break;
      }
      damping = damping == 0.0 ? 1e-8 : damping * 100.0;
    }

    // Backtracking line search (Armijo).
    const double slope = grad.dot(step);
    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      Mat Ct = C;
      for (int a = 0; a < F; ++a) Ct.col(free_idx_[a]) += t * step.segment(a * n, n);
      enforce_endpoints(Ct, xstar, x);
      double Et = evaluate(Ct, false);
      if (Et <= E + 1e-4 * t * slope) {
        C = Ct;
        E = evaluate(C, true);
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // No descent possible at working precision; accept as stationary.
      out.converged = grad.lpNorm<Eigen::Infinity>() <= 1e3 * cfg_.grad_tol * std::max(1.0, E);
      break;
    }
  }
  out.iters = it;
  if (it == cfg_.max_iters) out.converged = false;
  out.coeffs = C;
  out.energy = E;
  return out;
}

GeodesicCurve GeodesicSolver::solve(const Vec& xstar, const Vec& x) const {
  return run(xstar, x, straight_line(xstar, x));
}

GeodesicCurve GeodesicSolver::solve_warm(const Vec& xstar, const Vec& x,
                                         const GeodesicCurve& prev) const {
  if (prev.coeffs.cols() != cfg_.basis_order || prev.coeffs.rows() != xstar.size())
    return solve(xstar, x);
  return run(xstar, x, prev.coeffs);
}

double GeodesicSolver::energy_lower_bound(const Vec& xstar, const Vec& x) const {
  return mp_->alpha1 * (x - xstar).squaredNorm();
}

std::pair<Vec, Vec> first_variation_terms(const GeodesicCurve& geo, const MetricPolynomial& mp) {
  Vec x = geo.gamma(1.0), xstar = geo.gamma(0.0);
  Vec v1 = geo.dgamma_ds(1.0), v0 = geo.dgamma_ds(0.0);
  Vec eta1 = mp.M(x).transpose() * v1;   // = M v1 (M symmetric)
  Vec eta0 = mp.M(xstar).transpose() * v0;
  return {eta1, eta0};
}

}  // namespace rccm
