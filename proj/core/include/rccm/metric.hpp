#pragma once
// Polynomial dual contraction metric W(x) and its grid-based verification.
//
// W(x) = sum_k S_k * mu_k(x) with symmetric coefficient matrices S_k and
// monomials mu_k over a declared subset of state coordinates.  The metric
// used by the controller is M(x) = W(x)^{-1}.  A valid pair (W, lambda)
// certifies universal exponential stabilizability at rate lambda via
//   B_perp' ( -dW_f + A W + W A' + 2 lambda W ) B_perp < 0   on X
// together with the Killing condition along the input columns,
//   dW_{b_j} - (db_j/dx) W - W (db_j/dx)' = 0.

#include <string>
#include <vector>

#include "rccm/model.hpp"

namespace rccm {

struct MetricPolynomial {
  int n = 0;                       // state dimension
  double lambda = 0.0;             // certified contraction rate
  std::vector<int> coords;         // state indices W may depend on
  int degree = 0;                  // max total degree of the monomials
  double alpha1 = 0.0;             // uniform bounds alpha1 I <= M <= alpha2 I
  double alpha2 = 0.0;
  std::vector<std::vector<int>> monos;  // exponent tuples over `coords`
  std::vector<Mat> S;                   // one symmetric n x n block per monomial

  Mat W(const Vec& x) const;
  // dW/dx_coord; zero matrix when W does not depend on that coordinate.
  Mat dW(const Vec& x, int coord) const;
  Mat M(const Vec& x) const;  // W(x)^{-1}
  // dM/dx_coord = -M dW M
  Mat dM(const Vec& x, int coord, const Mat& M_at_x) const;

  double overshoot() const;  // R = sqrt(alpha2 / alpha1)
};

MetricPolynomial load_metric(const std::string& path);
void save_metric(const MetricPolynomial& mp, const std::string& path);

struct CcmVerifyOptions {
  int grid_per_axis = 15;
  // State axes to grid; empty means every axis.  Axes not gridded are held
  // at the box center.  For models whose f, B and W ignore some coordinates
  // this makes the check exact over those coordinates.
  std::vector<int> grid_axes;
  double w_floor = 0.01;  // required W >= w_floor * I
};

struct CcmVerificationReport {
  int grid_per_axis = 0;
  long points_checked = 0;
  double w_min_eig = 0.0;           // min over grid of lambda_min(W)
  double w_max_eig = 0.0;           // max over grid of lambda_max(W)
  double contraction_margin = 0.0;  // -max over grid of lambda_max(G); > 0 passes
  double killing_residual = 0.0;    // max over grid of max-abs Killing defect
  double alpha1_found = 0.0;        // 1 / w_max_eig
  double alpha2_found = 0.0;        // 1 / w_min_eig
  double lambda = 0.0;
  bool pass = false;

  std::string to_markdown() const;
};

// Samples the strong dual CCM conditions on a regular grid over the state
// box.  B_perp is recomputed per point from a rank-revealing decomposition
// of B(x) (cached when the model declares constant B).
CcmVerificationReport verify_dual_ccm(const SystemModel& model, const MetricPolynomial& mp,
                                      const CcmVerifyOptions& opts = {});

}  // namespace rccm
