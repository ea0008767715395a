#include "rccm/metric.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rccm/io.hpp"

namespace rccm {

namespace {

double mono_eval(const std::vector<int>& exps, const std::vector<int>& coords, const Vec& x) {
  double v = 1.0;
  for (size_t a = 0; a < exps.size(); ++a)
    for (int e = 0; e < exps[a]; ++e) v *= x[coords[a]];
  return v;
}

// d(mu)/d(coords[which])
double mono_eval_d(const std::vector<int>& exps, const std::vector<int>& coords, const Vec& x,
                   size_t which) {
  if (exps[which] == 0) return 0.0;
  double v = exps[which];
  for (size_t a = 0; a < exps.size(); ++a) {
    int e = exps[a] - (a == which ? 1 : 0);
    for (int k = 0; k < e; ++k) v *= x[coords[a]];
  }
  return v;
}

}  // namespace

Mat MetricPolynomial::W(const Vec& x) const {
  Mat out = Mat::Zero(n, n);
  for (size_t k = 0; k < S.size(); ++k) out += mono_eval(monos[k], coords, x) * S[k];
  return out;
}

Mat MetricPolynomial::dW(const Vec& x, int coord) const {
  Mat out = Mat::Zero(n, n);
  for (size_t a = 0; a < coords.size(); ++a) {
    if (coords[a] != coord) continue;
    for (size_t k = 0; k < S.size(); ++k) out += mono_eval_d(monos[k], coords, x, a) * S[k];
  }
  return out;
}

Mat MetricPolynomial::M(const Vec& x) const {
  Mat w = W(x);
  return w.ldlt().solve(Mat::Identity(n, n));
}

Mat MetricPolynomial::dM(const Vec& x, int coord, const Mat& M_at_x) const {
  return -M_at_x * dW(x, coord) * M_at_x;
}

double MetricPolynomial::overshoot() const { return std::sqrt(alpha2 / alpha1); }

MetricPolynomial load_metric(const std::string& path) {
  MetricPolynomial mp;
  auto text = read_text_file(path);
  auto lines = split(text, '\n');
  size_t i = 0;
  bool saw_schema = false;
  long terms_declared = -1;
  for (; i < lines.size(); ++i) {
    auto line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;
    auto tok = split_ws(line);
    if (tok[0] == "schema") {
      if (tok.size() != 2 || tok[1] != "rccm-metric/1")
        throw std::runtime_error(path + ": unsupported metric schema");
      saw_schema = true;
    } else if (tok[0] == "n") {
      mp.n = static_cast<int>(parse_long(tok.at(1)));
    } else if (tok[0] == "lambda") {
      mp.lambda = parse_double(tok.at(1));
    } else if (tok[0] == "degree") {
      mp.degree = static_cast<int>(parse_long(tok.at(1)));
    } else if (tok[0] == "alpha1") {
      mp.alpha1 = parse_double(tok.at(1));
    } else if (tok[0] == "alpha2") {
      mp.alpha2 = parse_double(tok.at(1));
    } else if (tok[0] == "coords") {
      for (size_t a = 1; a < tok.size(); ++a)
        mp.coords.push_back(static_cast<int>(parse_long(tok[a])));
    } else if (tok[0] == "terms") {
      terms_declared = parse_long(tok.at(1));
    } else if (tok[0] == "term") {
      // term i j e_0 ... e_{c-1} coeff   (exponents follow the coords order)
      if (mp.n <= 0)
        throw std::runtime_error(path + ": term line before dimension header");
      const size_t nc = mp.coords.size();
      if (tok.size() != 3 + nc + 1)
        throw std::runtime_error(path + ": malformed term line: " + std::string(line));
      int r = static_cast<int>(parse_long(tok[1]));
      int c = static_cast<int>(parse_long(tok[2]));
      std::vector<int> exps(nc);
      for (size_t a = 0; a < nc; ++a) exps[a] = static_cast<int>(parse_long(tok[3 + a]));
      double coeff = parse_double(tok[3 + nc]);
      // locate or create the monomial block
      size_t k = 0;
      for (; k < mp.monos.size(); ++k)
        if (mp.monos[k] == exps) break;
      if (k == mp.monos.size()) {
        mp.monos.push_back(exps);
        mp.S.push_back(Mat::Zero(mp.n, mp.n));
      }
      mp.S[k](r, c) = coeff;
      mp.S[k](c, r) = coeff;
    } else {
      throw std::runtime_error(path + ": unknown metric line: " + std::string(line));
    }
  }
  if (!saw_schema) throw std::runtime_error(path + ": missing schema line");
  if (mp.n <= 0) throw std::runtime_error(path + ": missing dimension");
  long nterms = 0;
  for (const auto& s : mp.S)
    for (int r = 0; r < mp.n; ++r)
      for (int c = r; c < mp.n; ++c)
        if (s(r, c) != 0.0) ++nterms;
  if (terms_declared >= 0 && terms_declared != nterms)
    throw std::runtime_error(path + ": term count mismatch");
  return mp;
}

void save_metric(const MetricPolynomial& mp, const std::string& path) {
  std::ostringstream out;
  out << "schema rccm-metric/1\n";
  out << "n " << mp.n << "\n";
  out << "lambda " << format_double(mp.lambda) << "\n";
  out << "coords";
  for (int c : mp.coords) out << " " << c;
  out << "\n";
  out << "degree " << mp.degree << "\n";
  out << "alpha1 " << format_double(mp.alpha1) << "\n";
  out << "alpha2 " << format_double(mp.alpha2) << "\n";
  long nterms = 0;
  for (const auto& s : mp.S)
    for (int r = 0; r < mp.n; ++r)
      for (int c = r; c < mp.n; ++c)
        if (s(r, c) != 0.0) ++nterms;
  out << "terms " << nterms << "\n";
  for (size_t k = 0; k < mp.S.size(); ++k) {
    for (int r = 0; r < mp.n; ++r) {
      for (int c = r; c < mp.n; ++c) {
        if (mp.S[k](r, c) == 0.0) continue;
        out << "term " << r << " " << c;
        for (int e : mp.monos[k]) out << " " << e;
        out << " " << format_double(mp.S[k](r, c)) << "\n";
      }
    }
  }
  write_text_file(path, out.str());
}

namespace {

// Orthonormal basis of the left null space of B (columns span {v: v'B = 0}).
Mat null_space_of(const Mat& B) {
  Eigen::FullPivHouseholderQR<Mat> qr(B);
  Mat Q = qr.matrixQ();
  int rank = static_cast<int>(qr.rank());
  return Q.rightCols(B.rows() - rank);
}

void grid_recurse(const SystemModel& model, const MetricPolynomial& mp,
                  const CcmVerifyOptions& opts, const std::vector<int>& axes, size_t level,
                  Vec& x, const Mat& Bperp_cached, CcmVerificationReport& rep) {
  if (level < axes.size()) {
    int ax = axes[level];
    const double lo = model.state_box.lo[ax], hi = model.state_box.hi[ax];
    for (int i = 0; i < opts.grid_per_axis; ++i) {
      x[ax] = lo + (hi - lo) * static_cast<double>(i) / (opts.grid_per_axis - 1);
      grid_recurse(model, mp, opts, axes, level + 1, x, Bperp_cached, rep);
    }
    return;
  }

  ++rep.points_checked;
  const Mat W = mp.W(x);
  Eigen::SelfAdjointEigenSolver<Mat> ew(W);
  rep.w_min_eig = std::min(rep.w_min_eig, ew.eigenvalues().minCoeff());
  rep.w_max_eig = std::max(rep.w_max_eig, ew.eigenvalues().maxCoeff());

  const Mat A = model.dfdx ? model.dfdx(x) : fd_jacobian(model.f, x);
  const Vec fx = model.f(x);
  Mat dWf = Mat::Zero(mp.n, mp.n);
  for (int c : mp.coords) dWf += fx[c] * mp.dW(x, c);
  const Mat G = A * W + W * A.transpose() - dWf + 2.0 * mp.lambda * W;

  const Mat B = model.B(x);
  const Mat Bperp = model.constant_B ? Bperp_cached : null_space_of(B);
  const Mat Gr = Bperp.transpose() * G * Bperp;
  Eigen::SelfAdjointEigenSolver<Mat> eg(Gr);
  rep.contraction_margin = std::min(rep.contraction_margin, -eg.eigenvalues().maxCoeff());

  // Killing condition along each input column.
  for (int j = 0; j < model.m; ++j) {
    Mat dWb = Mat::Zero(mp.n, mp.n);
    for (int c : mp.coords) dWb += B(c, j) * mp.dW(x, c);
    Mat dbdx;
    if (model.constant_B) {
      dbdx = Mat::Zero(mp.n, mp.n);
    } else {
      auto bj = [&](const Vec& y) { return Vec(model.B(y).col(j)); };
      dbdx = fd_jacobian(bj, x);
    }
    Mat K = dWb - dbdx * W - W * dbdx.transpose();
    rep.killing_residual = std::max(rep.killing_residual, K.cwiseAbs().maxCoeff());
  }
}

}  // namespace

CcmVerificationReport verify_dual_ccm(const SystemModel& model, const MetricPolynomial& mp,
                                      const CcmVerifyOptions& opts) {
  if (mp.n != model.n) throw std::runtime_error("metric/model dimension mismatch");
  CcmVerificationReport rep;
  rep.grid_per_axis = opts.grid_per_axis;
  rep.lambda = mp.lambda;
  rep.w_min_eig = std::numeric_limits<double>::infinity();
  rep.w_max_eig = -std::numeric_limits<double>::infinity();
  rep.contraction_margin = std::numeric_limits<double>::infinity();
  rep.killing_residual = 0.0;

  std::vector<int> axes = opts.grid_axes;
  if (axes.empty())
    for (int i = 0; i < model.n; ++i) axes.push_back(i);

  Vec x = model.state_box.center();
  Mat Bperp_cached;
  if (model.constant_B) Bperp_cached = null_space_of(model.B(x));

  grid_recurse(model, mp, opts, axes, 0, x, Bperp_cached, rep);

  rep.alpha1_found = 1.0 / rep.w_max_eig;
  rep.alpha2_found = 1.0 / rep.w_min_eig;
  rep.pass = rep.w_min_eig >= opts.w_floor && rep.contraction_margin > 0.0 &&
             rep.killing_residual <= 1e-8;
  return rep;
}

std::string CcmVerificationReport::to_markdown() const {
  std::ostringstream o;
  o << "# Dual metric verification\n\n";
  o << "- grid: " << grid_per_axis << " points per gridded axis, " << points_checked
    << " points total\n";
  o << "- contraction rate lambda: " << format_double(lambda) << "\n";
  o << "- min eig W: " << format_double(w_min_eig) << "\n";
  o << "- max eig W: " << format_double(w_max_eig) << "\n";
  o << "- contraction margin (-max eig of reduced LMI): " << format_double(contraction_margin)
    << "\n";
  o << "- Killing residual (max abs): " << format_double(killing_residual) << "\n";
  o << "- alpha1: " << format_double(alpha1_found) << "\n";
  o << "- alpha2: " << format_double(alpha2_found) << "\n";
  o << "- overshoot sqrt(alpha2/alpha1): "
    << format_double(std::sqrt(alpha2_found / alpha1_found)) << "\n";
  o << "- verdict: " << (pass ? "PASS" : "FAIL") << "\n";
  return o.str();
}

}  // namespace rccm
