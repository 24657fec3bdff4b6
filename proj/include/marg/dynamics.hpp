#pragma once

#include <complex>
#include <vector>

#include "marg/groups.hpp"
#include "marg/qspace.hpp"

namespace marg {

// Real Schur decomposition M = Z T Z^T with block reordering on demand.
class EigenData {
 public:
  explicit EigenData(const Mat& m);

  const Mat& matrix() const { return matrix_; }
  const Mat& schur_t() const { return schur_t_; }
  const Mat& schur_z() const { return schur_z_; }

  // Eigenvalues sorted by descending modulus (ties keep Schur order).
  const std::vector<std::complex<double>>& eigenvalues() const {
    return sorted_;
  }

  double reconstruction_residual() const;

  // Orthonormal basis of the invariant subspace spanned by the k eigenvalues
  // of largest modulus. Throws DegenerateInput when the modulus cut between
  // positions k and k+1 is not numerically clean.
  Mat invariant_subspace_top(int k, double cut_rel_tol = 1e-12) const;
  // Same for the k smallest moduli.
  Mat invariant_subspace_bottom(int k, double cut_rel_tol = 1e-12) const;

 private:
  Mat invariant_subspace(const std::vector<int>& select) const;

  Mat matrix_, schur_t_, schur_z_;
  std::vector<std::complex<double>> t_order_;  // in Schur block order
  std::vector<std::complex<double>> sorted_;
  std::vector<int> sorted_idx_;  // positions in t_order_, descending modulus
};

EigenData eigendecompose(const Mat& m);

// Eigenstructure of a proximal isometry of the (n,n) model: the invariant
// isotropic (n-1)-planes for the top and bottom moduli, the two isotropic
// mid lines, and the mid eigenvalue of modulus >= 1.
struct ProximalData {
  Subspace a_att;   // attracting isotropic (n-1)-plane
  Subspace a_rep;   // repelling isotropic (n-1)-plane
  Vec mid_plus;     // unit, eigenvalue lambda (|lambda| >= 1)
  Vec mid_minus;    // unit, eigenvalue 1/lambda
  double lambda = 1.0;
  double gap_outer = 0.0;  // min of the two outer modulus ratios
  double gap_mid = 0.0;    // ratio of the two mid moduli
};

ProximalData proximal_data(const Isometry& g, double gap_tol = 1e-6);

// Eigenvalue of g on the invariant line spanned by (unit) u; throws
// ComplexMidEigenvalues when the line is not numerically invariant.
double eigenvalue_on_line(const Mat& m, const Vec& u, double tol = 1e-7);

// Attracting/repelling isotropic (n-1)-planes of a proximal isometry of the
// odd-dimensional (n-1,n) model, plus margins and the neutral eigenvector
// (unsigned; the invariants module fixes the sign convention).
struct AffineProximalData {
  Subspace a_att;
  Subspace a_rep;
  Vec neutral_unsigned;  // unit timelike, g nu = nu
  double gap_outer = 0.0;
  double gap_mid = 0.0;
};

AffineProximalData affine_proximal_data(const Isometry& g,
                                        double gap_tol = 1e-6);

// Fixed timelike direction of a proximal isometry of the (n-1,n) model, with
// the sign fixed by the neutral labeling rule on its (attracting, repelling)
// null planes.
Vec neutral_fixed_vector(const Isometry& g, double gap_tol = 1e-6);

struct MarginRecord {
  double gap_outer = 0.0;
  double gap_mid = 0.0;
  // Smallest principal angle between this word's attracting plane and the
  // repelling planes of the other words (radians).
  double min_transversality_angle = 0.0;
};

MarginRecord proximality_margin(const FreeRep& rep, const Word& w,
                                const std::vector<Word>& others,
                                double gap_tol = 1e-6);

}  // namespace marg
