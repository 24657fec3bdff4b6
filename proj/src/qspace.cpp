#include "marg/qspace.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace marg {

QSpace::QSpace(Mat gram, double sym_tol, double det_tol) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols() || gram_.rows() == 0)
    throw DimensionMismatch("QSpace: gram matrix must be square and nonempty");
  const double asym = (gram_ - gram_.transpose()).cwiseAbs().maxCoeff();
  if (asym > sym_tol)
    throw DegenerateInput("QSpace: gram matrix not symmetric, asymmetry " +
                          std::to_string(asym));
  gram_ = ((gram_ + gram_.transpose()) / 2.0).eval();
  Mat scaled = gram_;
  for (int i = 0; i < scaled.rows(); ++i) {
    const double r = scaled.row(i).norm();
    if (r == 0.0) throw DegenerateInput("QSpace: zero row in gram matrix");
    scaled.row(i) /= r;
  }
  if (std::abs(scaled.determinant()) <= det_tol)
    throw DegenerateInput("QSpace: gram matrix numerically singular");
}

QSpace QSpace::affine_model(int n) {
  if (n < 2) throw DegenerateInput("affine_model: need n >= 2");
  const int N = 2 * n - 1;
  Mat g = Mat::Identity(N, N);
  for (int i = n - 1; i < N; ++i) g(i, i) = -1.0;
  return QSpace(std::move(g));
}

QSpace QSpace::linear_model(int n) {
  if (n < 2) throw DegenerateInput("linear_model: need n >= 2");
  const int N = 2 * n;
  Mat g = Mat::Identity(N, N);
  for (int i = n; i < N; ++i) g(i, i) = -1.0;
  return QSpace(std::move(g));
}

double QSpace::inner(const Vec& u, const Vec& w) const {
  if (u.size() != dim() || w.size() != dim())
    throw DimensionMismatch("inner: vector dimension does not match the space");
  return u.dot(gram_ * w);
}

bool QSpace::same_form(const QSpace& other, double tol) const {
  return dim() == other.dim() &&
         (gram_ - other.gram_).cwiseAbs().maxCoeff() <= tol;
}

double inner(const QSpace& space, const Vec& u, const Vec& w) {
  return space.inner(u, w);
}

Subspace::Subspace(QSpace space, Mat basis, double rank_tol)
    : space_(std::move(space)), basis_(std::move(basis)) {
  if (basis_.rows() != space_.dim())
    throw DimensionMismatch("Subspace: basis rows do not match space dimension");
  if (basis_.cols() < 1 || basis_.cols() > basis_.rows())
    throw DegenerateInput("Subspace: basis must have between 1 and N columns");
  Mat normed = basis_;
  for (int j = 0; j < normed.cols(); ++j) {
    const double c = normed.col(j).norm();
    if (c == 0.0) throw DegenerateInput("Subspace: zero basis column");
    normed.col(j) /= c;
  }
  Eigen::JacobiSVD<Mat> svd(normed);
  if (svd.singularValues().minCoeff() <= rank_tol)
    throw DegenerateInput("Subspace: basis columns numerically dependent");
}

Subspace Subspace::span(const QSpace& space, const Vec& v) {
  Mat b(v.size(), 1);
  b.col(0) = v;
  return Subspace(space, std::move(b));
}

Mat Subspace::orthonormal_basis() const {
  Eigen::HouseholderQR<Mat> qr(basis_);
  Mat q = qr.householderQ() * Mat::Identity(basis_.rows(), basis_.cols());
  return q;
}

double max_principal_angle(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("principal angles: ambient dimensions differ");
  if (a.dim() != b.dim()) return M_PI / 2.0;
  const Mat qa = a.orthonormal_basis();
  const Mat qb = b.orthonormal_basis();
  Eigen::JacobiSVD<Mat> svd(qa.transpose() * qb);
  double smin = svd.singularValues().minCoeff();
  smin = std::min(1.0, std::max(-1.0, smin));
  return std::acos(smin);
}

double min_principal_angle(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("principal angles: ambient dimensions differ");
  const Mat qa = a.orthonormal_basis();
  const Mat qb = b.orthonormal_basis();
  Eigen::JacobiSVD<Mat> svd(qa.transpose() * qb);
  double smax = svd.singularValues().maxCoeff();
  smax = std::min(1.0, std::max(-1.0, smax));
  return std::acos(smax);
}

bool same_plane(const Subspace& a, const Subspace& b, double tol) {
  return a.dim() == b.dim() && max_principal_angle(a, b) < tol;
}

Subspace orthogonal_complement(const QSpace& space, const Subspace& s) {
  // Null space of B^T G, via full SVD.
  const Mat bt_g = s.basis().transpose() * space.gram();
  Eigen::JacobiSVD<Mat> svd(bt_g, Eigen::ComputeFullV);
  const int N = space.dim();
  const int k = s.dim();
  if (k == N)
    throw DegenerateInput("orthogonal_complement: complement of the whole space is zero");
  Mat kernel = svd.matrixV().rightCols(N - k);
  return Subspace(space, std::move(kernel));
}

bool is_isotropic(const QSpace& space, const Subspace& s, double tol) {
  Mat normed = s.basis();
  for (int j = 0; j < normed.cols(); ++j) normed.col(j) /= normed.col(j).norm();
  const Mat gram = normed.transpose() * space.gram() * normed;
  return gram.cwiseAbs().maxCoeff() <= tol;
}

std::pair<Mat, Mat> dual_bases(const QSpace& space, const Subspace& a,
                               const Subspace& b, double tol) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("dual_bases: subspace dimensions differ");
  Mat pa = a.orthonormal_basis();
  Mat pb = b.orthonormal_basis();
  const Mat pairing = pa.transpose() * space.gram() * pb;
  Eigen::JacobiSVD<Mat> svd(pairing);
  if (svd.singularValues().minCoeff() <= tol)
    throw NotTransverse("dual_bases: pairing matrix numerically singular");
  Mat pb_dual = pb * pairing.inverse();
  return {std::move(pa), std::move(pb_dual)};
}

std::pair<Vec, Vec> isotropic_lines(const QSpace& space, const Subspace& e,
                                    double tol) {
  if (e.dim() != 2)
    throw DimensionMismatch("isotropic_lines: subspace must be 2-dimensional");
  const Mat basis = e.orthonormal_basis();
  const Mat s = basis.transpose() * space.gram() * basis;
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  const Vec ev = es.eigenvalues();  // ascending
  if (!(ev[0] < -tol && ev[1] > tol))
    throw WrongSignature("isotropic_lines: restricted form is not of signature (1,1)");
  const double mu_neg = -ev[0];
  const double mu_pos = ev[1];
  // In the eigenbasis (q_neg, q_pos): mu_pos p^2 - mu_neg q^2 = 0.
  const Vec dir_neg = basis * es.eigenvectors().col(0);
  const Vec dir_pos = basis * es.eigenvectors().col(1);
  Vec u1 = std::sqrt(mu_neg) * dir_pos + std::sqrt(mu_pos) * dir_neg;
  Vec u2 = std::sqrt(mu_neg) * dir_pos - std::sqrt(mu_pos) * dir_neg;
  u1.normalize();
  u2.normalize();
  // <u1|u2> = 2 mu_pos mu_neg / norms > 0 by construction.
  return {std::move(u1), std::move(u2)};
}

std::vector<Vec> project_along(const QSpace& space, const Vec& x,
                               const std::vector<Subspace>& parts, double tol) {
  const int N = space.dim();
  if (x.size() != N)
    throw DimensionMismatch("project_along: vector dimension mismatch");
  int total = 0;
  for (const auto& p : parts) total += p.dim();
  if (total != N)
    throw NotDirectSum("project_along: parts do not sum to the whole space");
  Mat stacked(N, N);
  int col = 0;
  for (const auto& p : parts) {
    stacked.middleCols(col, p.dim()) = p.orthonormal_basis();
    col += p.dim();
  }
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues().minCoeff() <= tol)
    throw NotDirectSum("project_along: stacked basis numerically singular");
  const Vec coeff = svd.solve(x);
  std::vector<Vec> out;
  out.reserve(parts.size());
  col = 0;
  for (const auto& p : parts) {
    out.push_back(stacked.middleCols(col, p.dim()) * coeff.segment(col, p.dim()));
    col += p.dim();
  }
  return out;
}

Subspace intersect(const Subspace& a, const Subspace& b, double tol) {
  if (a.ambient_dim() != b.ambient_dim())
    throw DimensionMismatch("intersect: ambient dimensions differ");
  const Mat qa = a.orthonormal_basis();
  const Mat qb = b.orthonormal_basis();
  // Kernel of [qa, -qb]; the qa-part of a kernel vector spans the intersection.
  Mat stacked(qa.rows(), qa.cols() + qb.cols());
  stacked << qa, -qb;
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  const Vec sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > tol) ++rank;
  const int null_dim = static_cast<int>(stacked.cols()) - rank;
  const int max_dim = std::min(a.dim(), b.dim());
  if (null_dim == 0)
    throw BadIntersectionDim("intersect: subspaces intersect trivially");
  if (null_dim > max_dim)
    throw DegenerateInput("intersect: numerically ambiguous intersection");
  Mat kernel = svd.matrixV().rightCols(null_dim);
  Mat basis = qa * kernel.topRows(qa.cols());
  // Orthonormalize the result.
  Eigen::HouseholderQR<Mat> qr(basis);
  Mat q = qr.householderQ() * Mat::Identity(basis.rows(), null_dim);
  return Subspace(a.space(), std::move(q));
}

Mat exp_so(const QSpace& space, const Mat& x, double t, double lie_tol) {
  if (x.rows() != space.dim() || x.cols() != space.dim())
    throw DimensionMismatch("exp_so: matrix dimension mismatch");
  const Mat defect = x.transpose() * space.gram() + space.gram() * x;
  const double res = defect.cwiseAbs().maxCoeff();
  if (res > lie_tol)
    throw NotInLieAlgebra("exp_so: X^T Q + Q X residual " + std::to_string(res));
  return (t * x).exp();
}

Mat random_lie(const QSpace& space, Rng& rng, double scale) {
  const int N = space.dim();
  Mat s = Mat::Zero(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      const double v = rng.uniform(-scale, scale);
      s(i, j) = v;
      s(j, i) = -v;
    }
  // X = Q^{-1} S satisfies X^T Q + Q X = 0. Model grams are their own
  // inverses; the general case goes through a solve.
  Mat x = space.gram().ldlt().solve(s);
  // Kill the residual from the solve so exp_so's precheck passes exactly.
  const Mat defect = x.transpose() * space.gram() + space.gram() * x;
  x -= 0.5 * space.gram().ldlt().solve(defect);
  return x;
}

Mat random_lie(const QSpace& space, std::uint64_t seed, double scale) {
  Rng rng(seed);
  return random_lie(space, rng, scale);
}

ModelData ModelData::make(int n) {
  ModelData md{n, QSpace::affine_model(n), QSpace::linear_model(n),
               Vec(), Vec(), Vec(), Vec(), Mat(), Mat(), Mat(), Mat()};
  const int Na = 2 * n - 1;
  const int Nl = 2 * n;

  md.v = Vec::Zero(Na);
  md.v[n - 1] = 1.0;

  md.v_plus = Vec::Zero(Nl);
  md.v_plus[0] = 1.0;
  md.v_plus[n] = 1.0;
  md.v_minus = Vec::Zero(Nl);
  md.v_minus[0] = 1.0;
  md.v_minus[n] = -1.0;
  md.v0 = (md.v_plus + md.v_minus) / 2.0;

  md.w_plus_affine = Mat::Zero(Na, n - 1);
  md.w_minus_affine = Mat::Zero(Na, n - 1);
  for (int i = 0; i < n - 1; ++i) {
    md.w_plus_affine(i, i) = 1.0;         // +x block
    md.w_plus_affine(n + i, i) = 1.0;     // x block
    md.w_minus_affine(i, i) = -1.0;
    md.w_minus_affine(n + i, i) = 1.0;
  }
  md.w_plus = Mat::Zero(Nl, n - 1);
  md.w_minus = Mat::Zero(Nl, n - 1);
  for (int i = 0; i < n - 1; ++i) {
    md.w_plus(1 + i, i) = 1.0;
    md.w_plus(n + 1 + i, i) = 1.0;
    md.w_minus(1 + i, i) = -1.0;
    md.w_minus(n + 1 + i, i) = 1.0;
  }
  return md;
}

Vec iota(const Vec& x) {
  Vec y = Vec::Zero(x.size() + 1);
  y.tail(x.size()) = x;
  return y;
}

Vec iota_inverse(const Vec& y, double tol) {
  if (std::abs(y[0]) > tol * std::max(1.0, y.norm()))
    throw DegenerateInput("iota_inverse: first coordinate not negligible");
  return y.tail(y.size() - 1);
}

}  // namespace marg
