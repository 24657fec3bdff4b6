#include "marg/groups.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace marg {

namespace {

FormResiduals measure_residuals(const QSpace& space, const Mat& m) {
  FormResiduals r;
  r.form = (m.transpose() * space.gram() * m - space.gram()).cwiseAbs().maxCoeff();
  r.det_dev = std::abs(m.determinant() - 1.0);
  return r;
}

}  // namespace

Isometry::Isometry(QSpace space, Mat m, double form_tol)
    : space_(std::move(space)), m_(std::move(m)) {
  if (m_.rows() != space_.dim() || m_.cols() != space_.dim())
    throw DimensionMismatch("Isometry: matrix dimension mismatch");
  residuals_ = measure_residuals(space_, m_);
  if (residuals_.form > form_tol)
    throw NotOrthogonalForForm("Isometry: form residual " +
                               std::to_string(residuals_.form));
  if (m_.determinant() < 0.0)
    throw NegativeDeterminant("Isometry: determinant is negative");
  if (residuals_.det_dev > form_tol * 100)
    throw NegativeDeterminant("Isometry: determinant deviates from +1 by " +
                              std::to_string(residuals_.det_dev));
}

Isometry::Isometry(QSpace space, Mat m, FormResiduals r, bool)
    : space_(std::move(space)), m_(std::move(m)), residuals_(r) {}

Isometry Isometry::operator*(const Isometry& other) const {
  if (!space_.same_form(other.space_))
    throw DimensionMismatch("Isometry product: spaces differ");
  Mat prod = m_ * other.m_;
  FormResiduals r = measure_residuals(space_, prod);
  return Isometry(space_, std::move(prod), r, true);
}

Isometry Isometry::inverse() const {
  Mat inv = space_.gram().ldlt().solve(m_.transpose() * space_.gram());
  FormResiduals r = measure_residuals(space_, inv);
  return Isometry(space_, std::move(inv), r, true);
}

Isometry validate_isometry(const QSpace& space, const Mat& m, double form_tol) {
  return Isometry(space, m, form_tol);
}

Isometry exp_isometry(const QSpace& space, const Mat& x, double t,
                      double lie_tol) {
  return Isometry(space, exp_so(space, x, t, lie_tol));
}

Isometry embed_iota(const Isometry& g) {
  const int Na = g.dim();
  if (Na % 2 != 1)
    throw DimensionMismatch("embed_iota: expects the odd-dimensional model");
  const int n = (Na + 1) / 2;
  if (!g.space().same_form(QSpace::affine_model(n), 1e-9))
    throw DegenerateInput("embed_iota: source space is not the affine model form");
  Mat big = Mat::Identity(Na + 1, Na + 1);
  big.bottomRightCorner(Na, Na) = g.matrix();
  return Isometry(QSpace::linear_model(n), std::move(big));
}

AffineIsometry::AffineIsometry(Isometry linear, Vec translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
  if (translation_.size() != linear_.dim())
    throw DimensionMismatch("AffineIsometry: translation dimension mismatch");
}

AffineIsometry AffineIsometry::operator*(const AffineIsometry& other) const {
  return AffineIsometry(linear_ * other.linear_,
                        linear_(other.translation_) + translation_);
}

AffineIsometry AffineIsometry::inverse() const {
  Isometry li = linear_.inverse();
  Vec t = -li(translation_);
  return AffineIsometry(std::move(li), std::move(t));
}

Word::Word(std::vector<int> letters) : letters_(std::move(letters)) {
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i] == 0)
      throw std::invalid_argument("Word: zero letter");
    if (i + 1 < letters_.size() && letters_[i] == -letters_[i + 1])
      throw std::invalid_argument("Word: not freely reduced");
  }
}

Word Word::generator(int index, int sign) {
  if (index < 0 || sign == 0) throw std::invalid_argument("Word::generator");
  return Word({sign > 0 ? index + 1 : -(index + 1)});
}

Word Word::inverse() const {
  std::vector<int> rev(letters_.rbegin(), letters_.rend());
  for (int& l : rev) l = -l;
  return Word(std::move(rev));
}

Word Word::power(int k) const {
  if (k == 0) return Word();
  Word base = k > 0 ? *this : inverse();
  Word out = base;
  for (int i = 1; i < std::abs(k); ++i) out = out * base;
  return out;
}

Word Word::operator*(const Word& other) const {
  std::vector<int> out = letters_;
  for (int l : other.letters_) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return Word(std::move(out));
}

bool Word::is_cyclically_reduced() const {
  if (letters_.size() < 2) return true;
  return letters_.front() != -letters_.back();
}

std::string Word::name() const {
  if (letters_.empty()) return "e";
  std::string out;
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ' ';
    const int l = letters_[i];
    const int idx = std::abs(l) - 1;
    if (idx < 26)
      out += static_cast<char>('a' + idx);
    else
      out += "g" + std::to_string(idx);
    if (l < 0) out += "^-1";
  }
  return out;
}

FreeRep::FreeRep(QSpace space, std::vector<Isometry> generators)
    : space_(std::move(space)), gens_(std::move(generators)) {
  for (const auto& g : gens_)
    if (!g.space().same_form(space_))
      throw DimensionMismatch("FreeRep: generator over a different space");
}

Isometry FreeRep::evaluate(const Word& w) const {
  Mat acc = Mat::Identity(space_.dim(), space_.dim());
  for (int l : w.letters()) {
    const int idx = std::abs(l) - 1;
    if (idx >= rank()) throw std::out_of_range("FreeRep: letter outside rank");
    const Isometry& g = gens_[idx];
    acc = acc * (l > 0 ? g.matrix() : g.inverse().matrix());
  }
  // Rounding in the product scales with |M|^2.
  return validate_isometry(space_, acc,
                           1e-12 * std::max(1.0, acc.squaredNorm()));
}

AffineFreeRep::AffineFreeRep(QSpace space, std::vector<AffineIsometry> generators)
    : space_(std::move(space)), gens_(std::move(generators)) {
  for (const auto& g : gens_)
    if (!g.linear().space().same_form(space_))
      throw DimensionMismatch("AffineFreeRep: generator over a different space");
}

AffineIsometry AffineFreeRep::evaluate(const Word& w) const {
  AffineIsometry acc(
      validate_isometry(space_, Mat::Identity(space_.dim(), space_.dim())),
      Vec::Zero(space_.dim()));
  for (int l : w.letters()) {
    const int idx = std::abs(l) - 1;
    if (idx >= rank())
      throw std::out_of_range("AffineFreeRep: letter outside rank");
    const AffineIsometry& g = gens_[idx];
    acc = acc * (l > 0 ? g : g.inverse());
  }
  return acc;
}

DeformationFamily::DeformationFamily(FreeRep base, std::vector<Mat> directions,
                                     double lie_tol)
    : base_(std::move(base)),
      directions_(std::move(directions)),
      linear_space_(QSpace::linear_model((base_.space().dim() + 1) / 2)),
      n_((base_.space().dim() + 1) / 2) {
  if (static_cast<int>(directions_.size()) != base_.rank())
    throw DimensionMismatch("DeformationFamily: one direction per generator");
  if (!base_.space().same_form(QSpace::affine_model(n_), 1e-9))
    throw DegenerateInput("DeformationFamily: base must act on the affine model");
  for (const auto& y : directions_) {
    if (y.rows() != linear_space_.dim() || y.cols() != linear_space_.dim())
      throw DimensionMismatch("DeformationFamily: direction dimension mismatch");
    const double res =
        (y.transpose() * linear_space_.gram() + linear_space_.gram() * y)
            .cwiseAbs()
            .maxCoeff();
    if (res > lie_tol)
      throw NotInLieAlgebra("DeformationFamily: direction not in the Lie algebra");
  }
}

FreeRep DeformationFamily::at(double t) const {
  std::vector<Isometry> gens;
  gens.reserve(base_.rank());
  for (int i = 0; i < base_.rank(); ++i) {
    const Mat e = (t * directions_[i]).exp();
    const Mat g = embed_iota(base_.generator(i)).matrix();
    const Mat m = e * g;
    gens.push_back(validate_isometry(linear_space_, m,
                                     1e-9 * std::max(1.0, m.squaredNorm())));
  }
  return FreeRep(linear_space_, std::move(gens));
}

Mat DeformationFamily::letter_value(int letter) const {
  const int idx = std::abs(letter) - 1;
  const Mat g = embed_iota(base_.generator(idx)).matrix();
  if (letter > 0) return g;
  return embed_iota(base_.generator(idx).inverse()).matrix();
}

Mat DeformationFamily::letter_derivative(int letter) const {
  const int idx = std::abs(letter) - 1;
  const Mat g = embed_iota(base_.generator(idx)).matrix();
  if (letter > 0) return directions_[idx] * g;
  // d/dt (exp(tY) g)^{-1} |_0 = -g^{-1} Y
  const Mat ginv = embed_iota(base_.generator(idx).inverse()).matrix();
  return -ginv * directions_[idx];
}

Mat DeformationFamily::derivative(const Word& w) const {
  const int N = linear_space_.dim();
  const auto& letters = w.letters();
  const int m = static_cast<int>(letters.size());
  Mat out = Mat::Zero(N, N);
  if (m == 0) return out;
  // Suffix products rho_0(l_{j+1} ... l_m).
  std::vector<Mat> suffix(m + 1, Mat::Identity(N, N));
  for (int j = m - 1; j >= 0; --j)
    suffix[j] = letter_value(letters[j]) * suffix[j + 1];
  Mat prefix = Mat::Identity(N, N);
  for (int j = 0; j < m; ++j) {
    out += prefix * letter_derivative(letters[j]) * suffix[j + 1];
    prefix = prefix * letter_value(letters[j]);
  }
  return out;
}

Vec DeformationFamily::cocycle(const Word& w) const {
  const ModelData md = ModelData::make(n_);
  return derivative(w) * md.v0;
}

Vec DeformationFamily::cocycle_affine(const Word& w) const {
  Vec u = cocycle(w);
  return u.tail(u.size() - 1);
}

AffineFreeRep DeformationFamily::affine() const {
  std::vector<AffineIsometry> gens;
  gens.reserve(base_.rank());
  for (int i = 0; i < base_.rank(); ++i) {
    gens.emplace_back(base_.generator(i),
                      cocycle_affine(Word::generator(i)));
  }
  return AffineFreeRep(base_.space(), std::move(gens));
}

}  // namespace marg
