#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "marg/errors.hpp"
#include "marg/rng.hpp"

namespace marg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Real vector space with a nondegenerate symmetric bilinear form.
class QSpace {
 public:
  // Validates symmetry (entrywise, sym_tol) and nondegeneracy
  // (|det| of the row-normalized Gram > det_tol).
  explicit QSpace(Mat gram, double sym_tol = 1e-12, double det_tol = 1e-10);

  // diag(I_{n-1}, -I_n) on R^{2n-1}, signature (n-1, n).
  static QSpace affine_model(int n);
  // diag(I_n, -I_n) on R^{2n}, signature (n, n).
  static QSpace linear_model(int n);

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Mat& gram() const { return gram_; }

  double inner(const Vec& u, const Vec& w) const;

  bool same_form(const QSpace& other, double tol = 1e-12) const;

 private:
  Mat gram_;
};

double inner(const QSpace& space, const Vec& u, const Vec& w);

// Linear subspace given by an independent column basis.
class Subspace {
 public:
  // Validates full column rank: smallest singular value of the
  // column-normalized basis must exceed rank_tol.
  Subspace(QSpace space, Mat basis, double rank_tol = 1e-10);

  static Subspace span(const QSpace& space, const Vec& v);

  const QSpace& space() const { return space_; }
  const Mat& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  int ambient_dim() const { return space_.dim(); }

  // Orthonormal (Euclidean) basis of the same span.
  Mat orthonormal_basis() const;

 private:
  QSpace space_;
  Mat basis_;
};

// Largest principal angle between the spans (radians).
double max_principal_angle(const Subspace& a, const Subspace& b);

// Smallest principal angle; zero iff the spans share a direction.
double min_principal_angle(const Subspace& a, const Subspace& b);

// Equality as planes: all principal angles below tol.
bool same_plane(const Subspace& a, const Subspace& b, double tol = 1e-9);

// Form-orthogonal complement; dimension N - dim(S).
Subspace orthogonal_complement(const QSpace& space, const Subspace& s);

// True iff all pairings of the (Euclidean-normalized) basis vectors are <= tol.
bool is_isotropic(const QSpace& space, const Subspace& s, double tol = 1e-10);

// Rescaled bases (a_i), (b_j) of A and B with <a_i|b_j> = delta_ij.
// Throws NotTransverse when the pairing matrix is singular beyond tol.
std::pair<Mat, Mat> dual_bases(const QSpace& space, const Subspace& a,
                               const Subspace& b, double tol = 1e-10);

// The two isotropic lines of a 2-dimensional subspace of signature (1,1),
// as Euclidean-unit vectors u1, u2 with <u1|u2> > 0.
std::pair<Vec, Vec> isotropic_lines(const QSpace& space, const Subspace& e,
                                    double tol = 1e-10);

// Components of x along a direct-sum decomposition into parts.
std::vector<Vec> project_along(const QSpace& space, const Vec& x,
                               const std::vector<Subspace>& parts,
                               double tol = 1e-10);

// Intersection of two subspaces. Throws DegenerateInput if the numerical
// intersection dimension is ambiguous at tol.
Subspace intersect(const Subspace& a, const Subspace& b, double tol = 1e-9);

// exp(tX) for X in the Lie algebra of the form (X^T Q + Q X = 0 within
// lie_tol). Scaling-and-squaring Pade exponential.
Mat exp_so(const QSpace& space, const Mat& x, double t, double lie_tol = 1e-10);

// Seeded Lie-algebra sample X = Q^{-1} S, S antisymmetric with entries
// uniform in [-scale, scale].
Mat random_lie(const QSpace& space, std::uint64_t seed, double scale);
Mat random_lie(const QSpace& space, Rng& rng, double scale);

// Distinguished vectors and planes of the two model spaces.
struct ModelData {
  int n = 0;
  QSpace affine;  // Q0 on R^{2n-1}
  QSpace linear;  // Q  on R^{2n}

  Vec v;                  // (0_{n-1}, 1, 0_{n-1}) in R^{2n-1}
  Vec v_plus, v_minus;    // (1, 0_{n-1}, +-1, 0_{n-1}) in R^{2n}
  Vec v0;                 // (v_plus + v_minus)/2

  Mat w_plus_affine, w_minus_affine;  // reference bases of W+- in R^{2n-1}
  Mat w_plus, w_minus;                // the same planes in R^{2n}

  static ModelData make(int n);

  Subspace W_plus_affine() const { return {affine, w_plus_affine}; }
  Subspace W_minus_affine() const { return {affine, w_minus_affine}; }
  Subspace W_plus() const { return {linear, w_plus}; }
  Subspace W_minus() const { return {linear, w_minus}; }
};

// (0, x) embedding of R^{2n-1} into R^{2n}.
Vec iota(const Vec& x);
Vec iota_inverse(const Vec& y, double tol = 1e-9);

}  // namespace marg
