#include "marg/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace marg {

Subspace transform(const Isometry& g, const Subspace& s) {
  return Subspace(s.space(), g.matrix() * s.basis());
}

NullPlane::NullPlane(Subspace plane, double tol) : plane_(std::move(plane)) {
  const QSpace& space = plane_.space();
  const int n = (space.dim() + 1) / 2;
  if (space.dim() != 2 * n - 1)
    throw DimensionMismatch("NullPlane: expects the odd-dimensional model");
  if (plane_.dim() != n)
    throw DimensionMismatch("NullPlane: plane must be n-dimensional");
  const Subspace core = orthogonal_complement(space, plane_);
  if (!is_isotropic(space, core, tol))
    throw WrongSignature("NullPlane: orthogonal complement is not isotropic");
}

NullPlane NullPlane::from_isotropic(const Subspace& a, double tol) {
  return NullPlane(orthogonal_complement(a.space(), a), tol);
}

Subspace NullPlane::isotropic_core() const {
  return orthogonal_complement(plane_.space(), plane_);
}

AffineNullPlane::AffineNullPlane(Vec base_point, NullPlane direction)
    : base_(std::move(base_point)), dir_(std::move(direction)) {
  if (base_.size() != dir_.plane().ambient_dim())
    throw DimensionMismatch("AffineNullPlane: base point dimension mismatch");
}

bool AffineNullPlane::contains(const Vec& x, double tol) const {
  const Vec d = x - base_;
  const Mat basis = dir_.plane().orthonormal_basis();
  const Vec resid = d - basis * (basis.transpose() * d);
  return resid.norm() <= tol * std::max(1.0, d.norm());
}

AffineNullPlane AffineNullPlane::transformed(const AffineIsometry& g) const {
  return AffineNullPlane(g(base_),
                         NullPlane(transform(g.linear(), dir_.plane())));
}

namespace {

// Null plane directions of the four arguments plus the neutral vectors the
// four-term formula needs.
struct BetaFrame {
  Vec v14, v13, v23, v24;
};

BetaFrame beta_frame(const AffineNullPlane& a1, const AffineNullPlane& a2,
                     const AffineNullPlane& a3, const AffineNullPlane& a4,
                     double tol) {
  const Subspace& v1 = a1.direction().plane();
  const Subspace& v2 = a2.direction().plane();
  const Subspace& v3 = a3.direction().plane();
  const Subspace& v4 = a4.direction().plane();
  return BetaFrame{neutral_vector(v1, v4, tol), neutral_vector(v1, v3, tol),
                   neutral_vector(v2, v3, tol), neutral_vector(v2, v4, tol)};
}

}  // namespace

double beta(const AffineNullPlane& a1, const AffineNullPlane& a2,
            const AffineNullPlane& a3, const AffineNullPlane& a4, double tol) {
  const QSpace& space = a1.direction().plane().space();
  const BetaFrame f = beta_frame(a1, a2, a3, a4, tol);
  return space.inner(a1.base_point(), f.v14 - f.v13) +
         space.inner(a2.base_point(), f.v23 - f.v24) +
         space.inner(a3.base_point(), f.v13 - f.v23) +
         space.inner(a4.base_point(), f.v24 - f.v14);
}

namespace {

// A point of the affine intersection of two affine null planes.
Vec affine_intersection_point(const AffineNullPlane& a, const AffineNullPlane& b,
                              double tol) {
  const Mat da = a.direction().plane().orthonormal_basis();
  const Mat db = b.direction().plane().orthonormal_basis();
  Mat m(da.rows(), da.cols() + db.cols());
  m << da, -db;
  const Vec rhs = b.base_point() - a.base_point();
  const Vec coeff = m.completeOrthogonalDecomposition().solve(rhs);
  const double resid = (m * coeff - rhs).norm();
  if (resid > tol * std::max(1.0, rhs.norm()))
    throw EmptyIntersection("affine null planes are numerically parallel");
  return a.base_point() + da * coeff.head(da.cols());
}

}  // namespace

double beta_direct(const AffineNullPlane& a1, const AffineNullPlane& a2,
                   const AffineNullPlane& a3, const AffineNullPlane& a4,
                   double tol) {
  const QSpace& space = a1.direction().plane().space();
  const Vec x13 = affine_intersection_point(a1, a3, 1e-8);
  const Vec x24 = affine_intersection_point(a2, a4, 1e-8);
  const Vec v14 = neutral_vector(a1.direction().plane(),
                                 a4.direction().plane(), tol);
  const Vec v23 = neutral_vector(a2.direction().plane(),
                                 a3.direction().plane(), tol);
  return space.inner(x13 - x24, v14 - v23);
}

double CrReport::max_residual() const {
  return std::max({invariance, sym_2143, sym_3412, sym_4321, antisym, cyclic,
                   cocycle});
}

CrReport cr_identity_suite(const std::array<AffineNullPlane, 4>& a,
                           const AffineNullPlane& star,
                           const std::vector<AffineIsometry>& isometries) {
  CrReport r;
  const double b = beta(a[0], a[1], a[2], a[3]);
  for (const auto& g : isometries) {
    const double bg = beta(a[0].transformed(g), a[1].transformed(g),
                           a[2].transformed(g), a[3].transformed(g));
    r.invariance = std::max(r.invariance, std::abs(bg - b));
  }
  r.sym_2143 = std::abs(beta(a[1], a[0], a[3], a[2]) - b);
  r.sym_3412 = std::abs(beta(a[2], a[3], a[0], a[1]) - b);
  r.sym_4321 = std::abs(beta(a[3], a[2], a[1], a[0]) - b);
  r.antisym = std::abs(beta(a[0], a[1], a[3], a[2]) + b);
  r.cyclic = std::abs(b + beta(a[0], a[2], a[3], a[1]) +
                      beta(a[0], a[3], a[1], a[2]));
  r.cocycle = std::abs(beta(a[0], star, a[2], a[3]) +
                       beta(star, a[1], a[2], a[3]) - b);
  return r;
}

double margulis_alpha(const AffineIsometry& g, double gap_tol) {
  const QSpace& space = g.linear().space();
  AffineProximalData pd = affine_proximal_data(g.linear(), gap_tol);
  const Subspace v_att = orthogonal_complement(space, pd.a_att);
  const Subspace v_rep = orthogonal_complement(space, pd.a_rep);
  // Definition order: repelling plane first.
  const Vec nu = neutral_vector(v_rep, v_att);
  return space.inner(g.translation(), nu);
}

std::pair<AffineNullPlane, AffineNullPlane> invariant_affine_null_planes(
    const AffineIsometry& g, double gap_tol) {
  const QSpace& space = g.linear().space();
  AffineProximalData pd = affine_proximal_data(g.linear(), gap_tol);
  const int N = space.dim();
  const Mat l = g.linear().matrix();
  const auto solve_plane = [&](const Subspace& core) {
    const Subspace direction = orthogonal_complement(space, core);
    const Mat d = direction.orthonormal_basis();
    // (l - I) x - D c = -u  =>  base point x with g(x + V) = x + V.
    Mat m(N, N + d.cols());
    m << (l - Mat::Identity(N, N)), -d;
    const Vec coeff = m.completeOrthogonalDecomposition().solve(-g.translation());
    const Vec x = coeff.head(N);
    const double resid = (m * coeff + g.translation()).norm();
    if (resid > 1e-7 * std::max(1.0, g.translation().norm()))
      throw DegenerateInput(
          "invariant_affine_null_planes: fixed-plane solve residual " +
          std::to_string(resid));
    return AffineNullPlane(x, NullPlane(direction));
  };
  return {solve_plane(pd.a_rep), solve_plane(pd.a_att)};
}

double theta(const Subspace& a1, const Subspace& a2, const Subspace& a3,
             const Subspace& a4, double tol) {
  const LabeledPair p13 = labeled_neutral_lines(a1, a3, tol);
  const LabeledPair p23 = labeled_neutral_lines(a2, a3, tol);
  const LabeledPair p24 = labeled_neutral_lines(a2, a4, tol);
  const LabeledPair p14 = labeled_neutral_lines(a1, a4, tol);
  const QSpace& space = a1.space();
  const double num = space.inner(p13.v_plus, p23.v_minus) *
                     space.inner(p24.v_plus, p14.v_minus);
  const double den = space.inner(p24.v_plus, p23.v_minus) *
                     space.inner(p13.v_plus, p14.v_minus);
  if (std::abs(den) < 1e-12 || std::abs(num) < 1e-12)
    throw DegenerateDenominator("theta: near-degenerate configuration");
  return num / den;
}

double EcrReport::max_residual() const {
  return std::max({invariance, sym_2143, sym_3412, sym_4321, reciprocal, cyclic,
                   cocycle});
}

namespace {

double log_ratio(double x, double y) { return std::abs(std::log(x / y)); }

}  // namespace

EcrReport ecr_identity_suite(const std::array<Subspace, 4>& a,
                             const Subspace& star,
                             const std::vector<Isometry>& isometries) {
  EcrReport r;
  const double t = theta(a[0], a[1], a[2], a[3]);
  for (const auto& g : isometries) {
    const double tg = theta(transform(g, a[0]), transform(g, a[1]),
                            transform(g, a[2]), transform(g, a[3]));
    r.invariance = std::max(r.invariance, log_ratio(tg, t));
  }
  r.sym_2143 = log_ratio(theta(a[1], a[0], a[3], a[2]), t);
  r.sym_3412 = log_ratio(theta(a[2], a[3], a[0], a[1]), t);
  r.sym_4321 = log_ratio(theta(a[3], a[2], a[1], a[0]), t);
  r.reciprocal = std::abs(std::log(t * theta(a[0], a[1], a[3], a[2])));
  r.cyclic = std::abs(std::log(t * theta(a[0], a[2], a[3], a[1]) *
                               theta(a[0], a[3], a[1], a[2])));
  r.cocycle = log_ratio(theta(a[0], star, a[2], a[3]) *
                        theta(star, a[1], a[2], a[3]), t);
  return r;
}

double lemid_check(const Subspace& star, const Subspace& a_i,
                   const Subspace& a_j, const Subspace& a_k, double tol) {
  const QSpace& space = star.space();
  const LabeledPair pi = labeled_neutral_lines(star, a_i, tol);
  const LabeledPair pj = labeled_neutral_lines(star, a_j, tol);
  const LabeledPair pk = labeled_neutral_lines(star, a_k, tol);
  const double lhs = space.inner(pi.v_plus, pi.v_minus) *
                     space.inner(pj.v_plus, pk.v_minus);
  const double rhs = space.inner(pj.v_plus, pi.v_minus) *
                     space.inner(pk.v_minus, pi.v_plus);
  return std::abs(lhs - rhs);
}

double alphabeta_check(const AffineIsometry& g, const AffineNullPlane& a,
                       double gap_tol) {
  const double alpha = margulis_alpha(g, gap_tol);
  auto [a_minus, a_plus] = invariant_affine_null_planes(g, gap_tol);
  const double b = beta(a_minus, a_plus, a.transformed(g), a);
  return std::abs(2.0 * alpha - b);
}

double lambda_labeled(const Isometry& g, double gap_tol) {
  ProximalData pd = proximal_data(g, gap_tol);
  const LabeledPair lp = labeled_neutral_lines(pd.a_att, pd.a_rep);
  return eigenvalue_on_line(g.matrix(), lp.v_plus);
}

double lambda_tracked(const Isometry& g, double gap_tol) {
  ProximalData pd = proximal_data(g, gap_tol);
  const LabeledPair lp = labeled_neutral_lines(pd.a_rep, pd.a_att);
  return eigenvalue_on_line(g.matrix(), lp.v_plus);
}

double lambdabeta_check(const Isometry& g, const Subspace& a_star,
                        double gap_tol) {
  ProximalData pd = proximal_data(g, gap_tol);
  const double lambda = lambda_labeled(g, gap_tol);
  const double th = theta(pd.a_rep, pd.a_att, transform(g, a_star), a_star);
  return std::abs(lambda * lambda - th) / (lambda * lambda);
}

NuOrthogonality nu_orthogonality_check(const Subspace& x, const Subspace& y,
                                       const Subspace& z, double tol) {
  const QSpace& space = x.space();
  const LabeledPair pz = labeled_neutral_lines(x, z, tol);
  const LabeledPair py = labeled_neutral_lines(x, y, tol);
  return NuOrthogonality{std::abs(space.inner(pz.v_plus, py.v_plus)),
                         std::abs(space.inner(pz.v_minus, py.v_minus))};
}

Subspace eta_plane(const Subspace& x, const Subspace& y, double tol) {
  const LabeledPair p = labeled_neutral_lines(x, y, tol);
  Mat basis(x.ambient_dim(), x.dim() + 1);
  basis << x.basis(), p.v_plus;
  Subspace eta(x.space(), std::move(basis));
  if (!is_isotropic(x.space(), eta, 1e-8))
    throw WrongSignature("eta_plane: span is not isotropic");
  return eta;
}

}  // namespace marg
