#include "marg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <lapacke.h>

#include "marg/neutral.hpp"

namespace marg {

namespace {

struct SchurResult {
  Mat t, z;
  std::vector<std::complex<double>> eigs;
};

SchurResult real_schur(const Mat& m) {
  const lapack_int n = static_cast<lapack_int>(m.rows());
  Mat t = m;  // overwritten with the quasi-triangular factor
  Mat z(n, n);
  std::vector<double> wr(n), wi(n);
  lapack_int sdim = 0;
  const lapack_int info = LAPACKE_dgees(
      LAPACK_COL_MAJOR, 'V', 'N', nullptr, n, t.data(), n, &sdim, wr.data(),
      wi.data(), z.data(), n);
  if (info < 0) throw DegenerateInput("real_schur: bad argument to dgees");
  if (info > 0) throw NoConvergence("real_schur: QR iteration failed to converge");
  SchurResult out{std::move(t), std::move(z), {}};
  out.eigs.reserve(n);
  for (lapack_int i = 0; i < n; ++i) out.eigs.emplace_back(wr[i], wi[i]);
  return out;
}

}  // namespace

EigenData::EigenData(const Mat& m) : matrix_(m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionMismatch("eigendecompose: matrix must be square");
  if (!m.allFinite())
    throw DegenerateInput("eigendecompose: matrix has non-finite entries");
  SchurResult s = real_schur(m);
  schur_t_ = std::move(s.t);
  schur_z_ = std::move(s.z);
  t_order_ = std::move(s.eigs);
  const int n = static_cast<int>(t_order_.size());
  sorted_idx_.resize(n);
  std::iota(sorted_idx_.begin(), sorted_idx_.end(), 0);
  std::stable_sort(sorted_idx_.begin(), sorted_idx_.end(), [&](int a, int b) {
    return std::abs(t_order_[a]) > std::abs(t_order_[b]);
  });
  sorted_.reserve(n);
  for (int i : sorted_idx_) sorted_.push_back(t_order_[i]);
}

double EigenData::reconstruction_residual() const {
  const Mat rec = schur_z_ * schur_t_ * schur_z_.transpose();
  return (rec - matrix_).cwiseAbs().maxCoeff() /
         std::max(1.0, matrix_.cwiseAbs().maxCoeff());
}

Mat EigenData::invariant_subspace(const std::vector<int>& select) const {
  const lapack_int n = static_cast<lapack_int>(matrix_.rows());
  Mat t = schur_t_;
  Mat z = schur_z_;
  std::vector<lapack_int> sel(select.begin(), select.end());
  std::vector<double> wr(n), wi(n);
  lapack_int mdim = 0;
  double s_dummy = 0.0, sep_dummy = 0.0;
  // The convenience wrapper LAPACKE_dtrsen segfaults in this LAPACKE build
  // (internal workspace query); call the _work variant with explicit buffers.
  std::vector<double> work(std::max<lapack_int>(1, 2 * n * n));
  std::vector<lapack_int> iwork(std::max<lapack_int>(1, n * n));
  const lapack_int info = LAPACKE_dtrsen_work(
      LAPACK_COL_MAJOR, 'N', 'V', sel.data(), n, t.data(), n, z.data(), n,
      wr.data(), wi.data(), &mdim, &s_dummy, &sep_dummy, work.data(),
      static_cast<lapack_int>(work.size()), iwork.data(),
      static_cast<lapack_int>(iwork.size()));
  if (info < 0) throw DegenerateInput("invariant_subspace: bad argument to dtrsen");
  if (info > 0)
    throw NoConvergence("invariant_subspace: block reordering failed");
  return z.leftCols(mdim);
}

Mat EigenData::invariant_subspace_top(int k, double cut_rel_tol) const {
  const int n = static_cast<int>(t_order_.size());
  if (k < 1 || k >= n)
    throw DimensionMismatch("invariant_subspace_top: bad block size");
  const double mk = std::abs(sorted_[k - 1]);
  const double mk1 = std::abs(sorted_[k]);
  if (mk - mk1 <= cut_rel_tol * std::max(mk, 1e-300))
    throw DegenerateInput("invariant_subspace_top: modulus cut not clean");
  std::vector<int> select(n, 0);
  for (int i = 0; i < k; ++i) select[sorted_idx_[i]] = 1;
  Mat basis = invariant_subspace(select);
  if (basis.cols() != k)
    throw DegenerateInput("invariant_subspace_top: selected block size mismatch");
  return basis;
}

Mat EigenData::invariant_subspace_bottom(int k, double cut_rel_tol) const {
  const int n = static_cast<int>(t_order_.size());
  if (k < 1 || k >= n)
    throw DimensionMismatch("invariant_subspace_bottom: bad block size");
  const double mk = std::abs(sorted_[n - k - 1]);
  const double mk1 = std::abs(sorted_[n - k]);
  if (mk - mk1 <= cut_rel_tol * std::max(mk, 1e-300))
    throw DegenerateInput("invariant_subspace_bottom: modulus cut not clean");
  std::vector<int> select(n, 0);
  for (int i = n - k; i < n; ++i) select[sorted_idx_[i]] = 1;
  Mat basis = invariant_subspace(select);
  if (basis.cols() != k)
    throw DegenerateInput("invariant_subspace_bottom: selected block size mismatch");
  return basis;
}

EigenData eigendecompose(const Mat& m) { return EigenData(m); }

double eigenvalue_on_line(const Mat& m, const Vec& u, double tol) {
  const Vec mu_vec = m * u;
  const double mu = u.dot(mu_vec) / u.squaredNorm();
  const double resid = (mu_vec - mu * u).norm();
  const double slack =
      tol * std::max(mu_vec.norm(), 1e-6 * m.norm() * u.norm());
  if (resid > slack)
    throw ComplexMidEigenvalues(
        "eigenvalue_on_line: line is not invariant, residual " +
        std::to_string(resid));
  return mu;
}

ProximalData proximal_data(const Isometry& g, double gap_tol) {
  const QSpace& space = g.space();
  const int N = space.dim();
  if (N % 2 != 0)
    throw DimensionMismatch("proximal_data: expects the even-dimensional model");
  const int n = N / 2;
  if (n < 2) throw DimensionMismatch("proximal_data: need n >= 2");

  EigenData ed(g.matrix());
  const auto& eig = ed.eigenvalues();
  const auto modulus = [&](int i) { return std::abs(eig[i]); };
  const double outer_top = modulus(n - 2) / modulus(n - 1);
  const double outer_bot = modulus(n) / modulus(n + 1);
  if (outer_top < 1.0 + gap_tol || outer_bot < 1.0 + gap_tol)
    throw NotProximal("proximal_data: outer modulus gaps below tolerance");

  Subspace a_att(space, ed.invariant_subspace_top(n - 1));
  Subspace a_rep(space, ed.invariant_subspace_bottom(n - 1));
  if (!is_isotropic(space, a_att, 1e-8) || !is_isotropic(space, a_rep, 1e-8))
    throw NotProximal("proximal_data: invariant planes are not isotropic");

  const Subspace e = intersect(orthogonal_complement(space, a_att),
                               orthogonal_complement(space, a_rep), 1e-9);
  if (e.dim() != 2)
    throw NotProximal("proximal_data: mid plane has wrong dimension");
  auto [u1, u2] = isotropic_lines(space, e, 1e-8);
  const double mu1 = eigenvalue_on_line(g.matrix(), u1);
  const double mu2 = eigenvalue_on_line(g.matrix(), u2);
  if (mu1 <= 0.0 || mu2 <= 0.0)
    throw NotProximal("proximal_data: mid eigenvalues not positive");
  if (std::abs(mu1 * mu2 - 1.0) > 1e-6)
    throw NotProximal("proximal_data: mid eigenvalues are not reciprocal");

  ProximalData out{std::move(a_att), std::move(a_rep), Vec(), Vec(), 1.0,
                   std::min(outer_top, outer_bot),
                   modulus(n - 1) / modulus(n)};
  if (std::abs(mu1) >= std::abs(mu2)) {
    out.mid_plus = u1;
    out.mid_minus = u2;
    out.lambda = mu1;
  } else {
    out.mid_plus = u2;
    out.mid_minus = u1;
    out.lambda = mu2;
  }
  return out;
}

AffineProximalData affine_proximal_data(const Isometry& g, double gap_tol) {
  const QSpace& space = g.space();
  const int N = space.dim();
  if (N % 2 != 1)
    throw DimensionMismatch("affine_proximal_data: expects the odd-dimensional model");
  const int n = (N + 1) / 2;
  if (n < 2) throw DimensionMismatch("affine_proximal_data: need n >= 2");

  EigenData ed(g.matrix());
  const auto& eig = ed.eigenvalues();
  const auto modulus = [&](int i) { return std::abs(eig[i]); };
  const double gap_top = modulus(n - 2) / modulus(n - 1);
  const double gap_bot = modulus(n - 1) / modulus(n);
  if (gap_top < 1.0 + gap_tol || gap_bot < 1.0 + gap_tol)
    throw NotProximal("affine_proximal_data: modulus gaps below tolerance");
  const std::complex<double> mid = eig[n - 1];
  if (std::abs(mid.imag()) > 1e-8 || std::abs(mid.real() - 1.0) > 1e-6)
    throw NeutralNotSimple("affine_proximal_data: mid eigenvalue is not 1");

  Subspace a_att(space, ed.invariant_subspace_top(n - 1));
  Subspace a_rep(space, ed.invariant_subspace_bottom(n - 1));
  if (!is_isotropic(space, a_att, 1e-8) || !is_isotropic(space, a_rep, 1e-8))
    throw NotProximal("affine_proximal_data: invariant planes are not isotropic");

  // Fixed line = intersection of the two invariant null planes.
  const Subspace core = intersect(orthogonal_complement(space, a_att),
                                  orthogonal_complement(space, a_rep), 1e-9);
  if (core.dim() != 1)
    throw NeutralNotSimple("affine_proximal_data: fixed line not unique");
  Vec nu = core.basis().col(0);
  const double q = space.inner(nu, nu);
  if (q >= -1e-10)
    throw WrongSignature("affine_proximal_data: fixed line is not timelike");
  nu /= std::sqrt(-q);
  const double fix_resid = (g.matrix() * nu - nu).norm();
  if (fix_resid > 1e-7 * std::max(1.0, g.matrix().norm()))
    throw NeutralNotSimple("affine_proximal_data: fixed vector residual " +
                           std::to_string(fix_resid));

  return AffineProximalData{std::move(a_att), std::move(a_rep), std::move(nu),
                            std::min(gap_top, gap_bot), gap_bot};
}

Vec neutral_fixed_vector(const Isometry& g, double gap_tol) {
  AffineProximalData pd = affine_proximal_data(g, gap_tol);
  const QSpace& space = g.space();
  const Subspace v_att = orthogonal_complement(space, pd.a_att);
  const Subspace v_rep = orthogonal_complement(space, pd.a_rep);
  // Sign convention: labeling rule on (attracting, repelling).
  return neutral_vector(v_att, v_rep);
}

MarginRecord proximality_margin(const FreeRep& rep, const Word& w,
                                const std::vector<Word>& others,
                                double gap_tol) {
  const Isometry g = rep.evaluate(w);
  MarginRecord out;
  if (rep.space().dim() % 2 == 0) {
    ProximalData pd = proximal_data(g, gap_tol);
    out.gap_outer = pd.gap_outer;
    out.gap_mid = pd.gap_mid;
    double min_angle = M_PI / 2;
    for (const auto& other : others) {
      if (other == w) continue;
      ProximalData po = proximal_data(rep.evaluate(other), gap_tol);
      min_angle = std::min(min_angle, min_principal_angle(pd.a_att, po.a_rep));
    }
    out.min_transversality_angle = min_angle;
  } else {
    AffineProximalData pd = affine_proximal_data(g, gap_tol);
    out.gap_outer = pd.gap_outer;
    out.gap_mid = pd.gap_mid;
    double min_angle = M_PI / 2;
    for (const auto& other : others) {
      if (other == w) continue;
      AffineProximalData po = affine_proximal_data(rep.evaluate(other), gap_tol);
      min_angle = std::min(min_angle, min_principal_angle(pd.a_att, po.a_rep));
    }
    out.min_transversality_angle = min_angle;
  }
  return out;
}

}  // namespace marg
