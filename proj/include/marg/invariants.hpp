#pragma once

#include <array>
#include <utility>
#include <vector>

#include "marg/dynamics.hpp"
#include "marg/groups.hpp"
#include "marg/neutral.hpp"
#include "marg/qspace.hpp"

namespace marg {

// g applied to a subspace.
Subspace transform(const Isometry& g, const Subspace& s);

// n-dimensional plane in R^{2n-1} whose orthogonal complement is a maximal
// isotropic plane.
class NullPlane {
 public:
  explicit NullPlane(Subspace plane, double tol = 1e-9);
  static NullPlane from_isotropic(const Subspace& a, double tol = 1e-9);

  const Subspace& plane() const { return plane_; }
  // The defining maximal isotropic plane (the orthogonal complement).
  Subspace isotropic_core() const;

 private:
  Subspace plane_;
};

class AffineNullPlane {
 public:
  AffineNullPlane(Vec base_point, NullPlane direction);

  const Vec& base_point() const { return base_; }
  const NullPlane& direction() const { return dir_; }

  bool contains(const Vec& x, double tol = 1e-9) const;
  AffineNullPlane transformed(const AffineIsometry& g) const;

 private:
  Vec base_;
  NullPlane dir_;
};

// Margulis invariant: pairing of the translation part against the neutral
// vector of the invariant null planes, repelling plane first.
double margulis_alpha(const AffineIsometry& g, double gap_tol = 1e-6);

// The unique invariant affine null planes (repelling, attracting) of a
// proximal affine isometry, found by solving (l - I)x = -u modulo the plane
// direction.
std::pair<AffineNullPlane, AffineNullPlane> invariant_affine_null_planes(
    const AffineIsometry& g, double gap_tol = 1e-6);

// Affine cross-ratio of four mutually transverse affine null planes,
// evaluated through the four-term representative-free formula.
double beta(const AffineNullPlane& a1, const AffineNullPlane& a2,
            const AffineNullPlane& a3, const AffineNullPlane& a4,
            double tol = 1e-10);

// The defining two-term formula through points of A1 cap A3 and A2 cap A4;
// cross-validates beta.
double beta_direct(const AffineNullPlane& a1, const AffineNullPlane& a2,
                   const AffineNullPlane& a3, const AffineNullPlane& a4,
                   double tol = 1e-10);

struct CrReport {
  double invariance = 0.0;  // max over the supplied isometries
  double sym_2143 = 0.0;
  double sym_3412 = 0.0;
  double sym_4321 = 0.0;
  double antisym = 0.0;
  double cyclic = 0.0;
  double cocycle = 0.0;
  double max_residual() const;
};

CrReport cr_identity_suite(const std::array<AffineNullPlane, 4>& a,
                           const AffineNullPlane& star,
                           const std::vector<AffineIsometry>& isometries);

// Multiplicative cross-ratio of four isotropic (n-1)-planes of the (n,n)
// model whose orthogonal planes are mutually transverse.
double theta(const Subspace& a1, const Subspace& a2, const Subspace& a3,
             const Subspace& a4, double tol = 1e-10);

struct EcrReport {
  double invariance = 0.0;  // max |log ratio|
  double sym_2143 = 0.0;
  double sym_3412 = 0.0;
  double sym_4321 = 0.0;
  double reciprocal = 0.0;
  double cyclic = 0.0;
  double cocycle = 0.0;
  double max_residual() const;
};

EcrReport ecr_identity_suite(const std::array<Subspace, 4>& a,
                             const Subspace& star,
                             const std::vector<Isometry>& isometries);

// |<v+_{*,i}|v-_{*,i}><v+_{*,j}|v-_{*,k}> - <v+_{*,j}|v-_{*,i}><v-_{*,k}|v+_{*,i}>|
// with unit labeled vectors.
double lemid_check(const Subspace& star, const Subspace& a_i,
                   const Subspace& a_j, const Subspace& a_k,
                   double tol = 1e-10);

// |2 alpha(g) - beta(A-, A+, gA, A)|.
double alphabeta_check(const AffineIsometry& g, const AffineNullPlane& a,
                       double gap_tol = 1e-6);

// Eigenvalue of g on the labeled plus line of (attracting, repelling).
double lambda_labeled(const Isometry& g, double gap_tol = 1e-6);
// Same with the arguments in the order (repelling, attracting); this is the
// orientation that the derivative formula tracks through t = 0.
double lambda_tracked(const Isometry& g, double gap_tol = 1e-6);

// |lambda^2 - theta(A_rep, A_att, g A_*, A_*)| / lambda^2.
double lambdabeta_check(const Isometry& g, const Subspace& a_star,
                        double gap_tol = 1e-6);

struct NuOrthogonality {
  double plus = 0.0;   // |<v+(x,z)|v+(x,y)>|
  double minus = 0.0;  // |<v-(x,z)|v-(x,y)>|
  double max() const { return plus > minus ? plus : minus; }
};

NuOrthogonality nu_orthogonality_check(const Subspace& x, const Subspace& y,
                                       const Subspace& z, double tol = 1e-10);

// x + R v_plus(x,y): maximal isotropic n-plane containing x; independent of y
// on limit-plane data. Basis columns ordered (basis of x, then the line).
Subspace eta_plane(const Subspace& x, const Subspace& y, double tol = 1e-10);

}  // namespace marg
