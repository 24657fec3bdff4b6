#include "marg/neutral.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace marg {

namespace {

Vec normalize_first_positive(Vec u) {
  u.normalize();
  for (int i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) > 1e-12) {
      if (u[i] < 0) u = -u;
      break;
    }
  }
  return u;
}

double labeling_det(const QSpace& space, const Vec& u, const Mat& abasis,
                    const Vec& uprime, const Mat& bbasis) {
  const int N = space.dim();
  const int k = static_cast<int>(abasis.cols());
  Mat m(N, N);
  m.col(0) = u;
  m.middleCols(1, k) = abasis;
  m.col(k + 1) = uprime;
  m.middleCols(k + 2, k) = bbasis;
  return m.determinant();
}

// Unlabeled core of the rule: the two candidate lines and the determinant of
// the first candidate against the dual bases of (A, B).
struct Candidates {
  Vec u1, u2;
  double det_u1_first;
};

Candidates line_candidates(const QSpace& space, const Subspace& a,
                           const Subspace& b, double tol) {
  if (!is_isotropic(space, a, 1e-8) || !is_isotropic(space, b, 1e-8))
    throw WrongSignature("labeled lines: input planes are not isotropic");
  const Subspace ap = orthogonal_complement(space, a);
  const Subspace bp = orthogonal_complement(space, b);
  Subspace e = intersect(ap, bp, 1e-9);
  if (e.dim() != 2)
    throw NotTransverse("labeled lines: complements do not meet in a 2-plane");
  auto [u1, u2] = isotropic_lines(space, e, tol);
  auto [abasis, bbasis] = dual_bases(space, a, b, tol);
  const double d = labeling_det(space, u1, abasis, u2, bbasis);
  if (std::abs(d) < 1e-12)
    throw NotTransverse("labeled lines: labeling determinant vanishes");
  return {std::move(u1), std::move(u2), d};
}

double affine_labeling_det(const QSpace& space, const Vec& u, const Mat& abasis,
                           const Mat& bbasis) {
  const int N = space.dim();
  const int k = static_cast<int>(abasis.cols());
  Mat m(N, N);
  m.col(0) = u;
  m.middleCols(1, k) = abasis;
  m.middleCols(k + 1, k) = bbasis;
  return m.determinant();
}

// Sign of the determinant rule on the candidate timelike vector w for the
// null-plane pair (V_i, V_j); a and b are dual bases of (V_i^perp, V_j^perp).
struct AffineCandidate {
  Vec w;  // unit timelike, <w|w> = -1
  double det_w;
};

AffineCandidate affine_candidate(const QSpace& space, const Subspace& v_i,
                                 const Subspace& v_j, double tol) {
  const int N = space.dim();
  const int n = (N + 1) / 2;
  if (v_i.dim() != n || v_j.dim() != n)
    throw DimensionMismatch("neutral_vector: null planes must have dimension n");
  const Subspace ai = orthogonal_complement(space, v_i);
  const Subspace aj = orthogonal_complement(space, v_j);
  if (!is_isotropic(space, ai, 1e-8) || !is_isotropic(space, aj, 1e-8))
    throw WrongSignature("neutral_vector: inputs are not null planes");
  Subspace core = intersect(v_i, v_j, 1e-9);
  if (core.dim() != 1)
    throw BadIntersectionDim("neutral_vector: intersection is not a line");
  Vec w = core.basis().col(0);
  const double q = space.inner(w, w);
  if (q >= -tol)
    throw WrongSignature("neutral_vector: intersection line is not timelike");
  w /= std::sqrt(-q);
  auto [abasis, bbasis] = dual_bases(space, ai, aj, tol);
  const double d = affine_labeling_det(space, w, abasis, bbasis);
  if (std::abs(d) < 1e-12)
    throw NotTransverse("neutral_vector: labeling determinant vanishes");
  return {std::move(w), d};
}

std::mutex calibration_mutex;

}  // namespace

int labeling_sign_linear(int n) {
  static std::map<int, int> cache;
  std::lock_guard<std::mutex> lock(calibration_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const ModelData md = ModelData::make(n);
  Candidates c =
      line_candidates(md.linear, md.W_plus(), md.W_minus(), 1e-10);
  // The anchor pair must label the v+ line as plus.
  const Vec vp = md.v_plus.normalized();
  const double a1 = std::abs(c.u1.dot(vp));
  const double a2 = std::abs(c.u2.dot(vp));
  if (std::max(a1, a2) < 1.0 - 1e-9)
    throw DegenerateInput("labeling calibration: anchor lines do not match v+");
  const bool u1_is_plus = a1 > a2;
  const int sign = (c.det_u1_first > 0) == u1_is_plus ? +1 : -1;
  cache[n] = sign;
  return sign;
}

int labeling_sign_affine(int n) {
  static std::map<int, int> cache;
  std::lock_guard<std::mutex> lock(calibration_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const ModelData md = ModelData::make(n);
  const Subspace wp = md.W_plus_affine();
  const Subspace wm = md.W_minus_affine();
  const Subspace vp = orthogonal_complement(md.affine, wp);
  const Subspace vm = orthogonal_complement(md.affine, wm);
  AffineCandidate c = affine_candidate(md.affine, vp, vm, 1e-10);
  const double align = c.w.dot(md.v);
  if (std::abs(std::abs(align) - 1.0) > 1e-9)
    throw DegenerateInput("labeling calibration: anchor line does not match v");
  // The anchor pair (W+^perp, W-^perp) must yield +v.
  const bool w_is_v = align > 0;
  const int sign = (c.det_w > 0) == w_is_v ? +1 : -1;
  cache[n] = sign;
  return sign;
}

LabeledPair labeled_neutral_lines(const Subspace& a, const Subspace& b,
                                  double tol) {
  const QSpace& space = a.space();
  const int n = space.dim() / 2;
  if (space.dim() != 2 * n || !space.same_form(QSpace::linear_model(n), 1e-9))
    throw DimensionMismatch("labeled_neutral_lines: expects the (n,n) model");
  if (a.dim() != n - 1 || b.dim() != n - 1)
    throw DimensionMismatch("labeled_neutral_lines: planes must be (n-1)-dimensional");
  Candidates c = line_candidates(space, a, b, tol);
  const int sigma = labeling_sign_linear(n);
  const bool u1_plus = (c.det_u1_first > 0) == (sigma > 0);
  Vec plus = u1_plus ? c.u1 : c.u2;
  Vec minus = u1_plus ? c.u2 : c.u1;
  return LabeledPair{a, b, normalize_first_positive(std::move(plus)),
                     normalize_first_positive(std::move(minus))};
}

Vec neutral_vector(const Subspace& v_i, const Subspace& v_j, double tol) {
  const QSpace& space = v_i.space();
  const int n = (space.dim() + 1) / 2;
  if (space.dim() != 2 * n - 1 ||
      !space.same_form(QSpace::affine_model(n), 1e-9))
    throw DimensionMismatch("neutral_vector: expects the (n-1,n) model");
  AffineCandidate c = affine_candidate(space, v_i, v_j, tol);
  const int sigma = labeling_sign_affine(n);
  return ((c.det_w > 0) == (sigma > 0)) ? c.w : Vec(-c.w);
}

}  // namespace marg
