#pragma once

#include <cstdint>
#include <vector>

#include "marg/qspace.hpp"

namespace marg {

struct FormResiduals {
  double form = 0.0;     // max |M^T Q M - Q|
  double det_dev = 0.0;  // |det M - 1|
};

// Form-preserving matrix with det ~ +1. Membership in the identity component
// is only guaranteed for products of exp_so outputs; user matrices are
// accepted on the form and determinant checks alone.
class Isometry {
 public:
  Isometry(QSpace space, Mat m, double form_tol = 1e-8);

  const QSpace& space() const { return space_; }
  const Mat& matrix() const { return m_; }
  int dim() const { return space_.dim(); }
  const FormResiduals& residuals() const { return residuals_; }

  Vec operator()(const Vec& x) const { return m_ * x; }
  Isometry operator*(const Isometry& other) const;
  // Q^{-1} M^T Q; exact inverse up to the form residual.
  Isometry inverse() const;

 private:
  Isometry(QSpace space, Mat m, FormResiduals r, bool /*unchecked*/);
  QSpace space_;
  Mat m_;
  FormResiduals residuals_;
};

Isometry validate_isometry(const QSpace& space, const Mat& m,
                           double form_tol = 1e-8);

Isometry exp_isometry(const QSpace& space, const Mat& x, double t,
                      double lie_tol = 1e-10);

// iota(g) = [[1,0],[0,g]], mapping SO(Q0) on R^{2n-1} into SO(Q) on R^{2n}.
Isometry embed_iota(const Isometry& g);

// x -> linear x + translation on R^{2n-1}.
class AffineIsometry {
 public:
  AffineIsometry(Isometry linear, Vec translation);

  const Isometry& linear() const { return linear_; }
  const Vec& translation() const { return translation_; }

  Vec operator()(const Vec& x) const {
    return linear_(x) + translation_;
  }
  // (l1,u1)(l2,u2) = (l1 l2, l1 u2 + u1)
  AffineIsometry operator*(const AffineIsometry& other) const;
  AffineIsometry inverse() const;

 private:
  Isometry linear_;
  Vec translation_;
};

// Freely reduced word in a free group; letters are +-(i+1) for generator i.
class Word {
 public:
  Word() = default;  // empty word
  explicit Word(std::vector<int> letters);  // throws if not freely reduced

  static Word generator(int index, int sign = +1);

  const std::vector<int>& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const;
  Word power(int k) const;
  // Concatenation with free reduction.
  Word operator*(const Word& other) const;

  bool is_cyclically_reduced() const;
  std::string name() const;  // e.g. "a b^-1 a"

  bool operator==(const Word& other) const { return letters_ == other.letters_; }

 private:
  std::vector<int> letters_;
};

// Representation of a free group by generator images.
class FreeRep {
 public:
  FreeRep(QSpace space, std::vector<Isometry> generators);

  const QSpace& space() const { return space_; }
  int rank() const { return static_cast<int>(gens_.size()); }
  const Isometry& generator(int i) const { return gens_.at(i); }

  Isometry evaluate(const Word& w) const;

 private:
  QSpace space_;
  std::vector<Isometry> gens_;
};

class AffineFreeRep {
 public:
  AffineFreeRep(QSpace space, std::vector<AffineIsometry> generators);

  const QSpace& space() const { return space_; }
  int rank() const { return static_cast<int>(gens_.size()); }
  const AffineIsometry& generator(int i) const { return gens_.at(i); }

  AffineIsometry evaluate(const Word& w) const;

 private:
  QSpace space_;
  std::vector<AffineIsometry> gens_;
};

// Analytic family rho_t(gamma_i) = exp(t Y_i) iota(base(gamma_i)) with base in
// SO(Q0) and directions Y_i in the Lie algebra of Q. Its t-derivative at 0 is
// exact in the letters (no finite differences).
class DeformationFamily {
 public:
  DeformationFamily(FreeRep base, std::vector<Mat> directions,
                    double lie_tol = 1e-10);

  int n() const { return n_; }
  const FreeRep& base() const { return base_; }
  const QSpace& linear_space() const { return linear_space_; }
  const std::vector<Mat>& directions() const { return directions_; }

  FreeRep at(double t) const;

  // u(w) = d/dt|_0 rho_t(w); Leibniz rule over the letters, with the inverse
  // letters differentiated through d/dt A_t^{-1} = -A^{-1} (dA) A^{-1}.
  Mat derivative(const Word& w) const;

  // u(w) v0 in R^{2n}; satisfies the cocycle law and <u|v0> = 0.
  Vec cocycle(const Word& w) const;
  // The same vector dropped to R^{2n-1}.
  Vec cocycle_affine(const Word& w) const;

  // (base(gamma_i), cocycle_affine(gamma_i)) as an affine representation.
  AffineFreeRep affine() const;

 private:
  Mat letter_value(int letter) const;       // rho_0 of one letter
  Mat letter_derivative(int letter) const;  // d/dt|_0 of one letter

  FreeRep base_;
  std::vector<Mat> directions_;
  QSpace linear_space_;
  int n_;
};

}  // namespace marg
