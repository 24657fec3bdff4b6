#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace marg;
using namespace marg::fixtures;

namespace {

Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

Vec vec4(double a, double b, double c, double d) {
  Vec v(4);
  v << a, b, c, d;
  return v;
}

AffineNullPlane from_core(const QSpace& q0, const Vec& core, const Vec& base) {
  return AffineNullPlane(base, NullPlane::from_isotropic(Subspace::span(q0, core)));
}

}  // namespace

TEST_CASE("null plane validation") {
  const ModelData md = ModelData::make(2);
  const NullPlane v1 = NullPlane::from_isotropic(md.W_plus_affine());
  CHECK(v1.plane().dim() == 2);
  CHECK(same_plane(v1.isotropic_core(), md.W_plus_affine()));

  // A definite plane is not a null plane.
  Mat basis(3, 2);
  basis << 0, 0, 1, 0, 0, 1;
  CHECK_THROWS_AS(NullPlane(Subspace(md.affine, basis)), WrongSignature);

  const AffineNullPlane a(vec3(1, 0, 0), v1);
  CHECK(a.contains(vec3(1, 0, 0) + vec3(1, 0, 1)));
  CHECK_FALSE(a.contains(vec3(0, 1, 0)));
}

TEST_CASE("labeled lines match the model anchors") {
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    const LabeledPair lp = labeled_neutral_lines(md.W_plus(), md.W_minus());
    CHECK(std::abs(lp.v_plus.dot(md.v_plus.normalized())) ==
          doctest::Approx(1.0));
    CHECK(std::abs(lp.v_minus.dot(md.v_minus.normalized())) ==
          doctest::Approx(1.0));
  }
}

TEST_CASE("labeled lines oracle equivariance") {
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(500 + n);
    for (int trial = 0; trial < 50; ++trial) {
      const Isometry g = random_isometry(md.linear, rng);
      const LabeledPair lp = labeled_neutral_lines(transform(g, md.W_plus()),
                                                   transform(g, md.W_minus()));
      const Vec target = (g.matrix() * md.v_plus).normalized();
      CHECK(std::abs(lp.v_plus.dot(target)) > 1.0 - 1e-9);
      const Vec target_m = (g.matrix() * md.v_minus).normalized();
      CHECK(std::abs(lp.v_minus.dot(target_m)) > 1.0 - 1e-9);
    }
  }
}

TEST_CASE("labeled lines swap behavior depends on the parity of n") {
  // Oracle-resolved: swapping the pair exchanges the labels for even n and
  // fixes them for odd n (the swap is realized inside the identity component
  // exactly when n is odd).
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(600 + n);
    for (int trial = 0; trial < 10; ++trial) {
      const Isometry g = random_isometry(md.linear, rng);
      const Subspace a = transform(g, md.W_plus());
      const Subspace b = transform(g, md.W_minus());
      const LabeledPair ab = labeled_neutral_lines(a, b);
      const LabeledPair ba = labeled_neutral_lines(b, a);
      if (n % 2 == 0)
        CHECK(std::abs(ba.v_plus.dot(ab.v_minus)) > 1.0 - 1e-9);
      else
        CHECK(std::abs(ba.v_plus.dot(ab.v_plus)) > 1.0 - 1e-9);
    }
  }
}

TEST_CASE("labeled plus line carries the expanding mid eigenvalue") {
  for (int n = 2; n <= 3; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(700 + n);
    for (int trial = 0; trial < 10; ++trial) {
      const Isometry g = random_proximal_linear(md, rng);
      const ProximalData pd = proximal_data(g);
      const LabeledPair lp = labeled_neutral_lines(pd.a_att, pd.a_rep);
      CHECK(std::abs(lp.v_plus.dot(pd.mid_plus)) > 1.0 - 1e-9);
      CHECK(lambda_labeled(g) == doctest::Approx(pd.lambda).epsilon(1e-10));
    }
  }
}

TEST_CASE("neutral vector anchors and oracle") {
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    const Subspace vp = orthogonal_complement(md.affine, md.W_plus_affine());
    const Subspace vm = orthogonal_complement(md.affine, md.W_minus_affine());
    CHECK((neutral_vector(vp, vm) - md.v).norm() < 1e-12);

    Rng rng(800 + n);
    for (int trial = 0; trial < 50; ++trial) {
      const Isometry g = random_isometry(md.affine, rng);
      const Vec nu = neutral_vector(
          orthogonal_complement(md.affine, transform(g, md.W_plus_affine())),
          orthogonal_complement(md.affine, transform(g, md.W_minus_affine())));
      CHECK((nu - g.matrix() * md.v).norm() < 1e-9);
    }
  }
}

TEST_CASE("neutral vector swap parity") {
  // Oracle-resolved: antisymmetric for even n, symmetric for odd n.
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(900 + n);
    const Isometry g = random_isometry(md.affine, rng);
    const Subspace vi =
        orthogonal_complement(md.affine, transform(g, md.W_plus_affine()));
    const Subspace vj =
        orthogonal_complement(md.affine, transform(g, md.W_minus_affine()));
    const Vec nij = neutral_vector(vi, vj);
    const Vec nji = neutral_vector(vj, vi);
    if (n % 2 == 0)
      CHECK((nij + nji).norm() < 1e-9);
    else
      CHECK((nij - nji).norm() < 1e-9);
  }
}

TEST_CASE("margulis alpha of the classical boost fixture") {
  const QSpace q0 = QSpace::affine_model(2);
  Mat x = Mat::Zero(3, 3);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  const Isometry boost = exp_isometry(q0, x, 2.0);
  const double c = 0.7;

  // Translating along the neutral fixed direction gives alpha = c.
  const Vec nu_fix = neutral_fixed_vector(boost);
  const AffineIsometry g(boost, c * nu_fix);
  CHECK(margulis_alpha(g) == doctest::Approx(c).epsilon(1e-12));

  // |alpha| = |c| for a translation of size c along the neutral line.
  const AffineIsometry gm(boost, -c * nu_fix);
  CHECK(margulis_alpha(gm) == doctest::Approx(-c).epsilon(1e-12));

  // alpha(g^k) = k alpha(g).
  AffineIsometry gk = g;
  for (int k = 2; k <= 5; ++k) {
    gk = gk * g;
    CHECK(margulis_alpha(gk) == doctest::Approx(k * c).epsilon(1e-8));
  }

  // Conjugation invariance under affine conjugators.
  Rng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const AffineIsometry h = random_affine_isometry(q0, rng);
    const AffineIsometry conj = h * g * h.inverse();
    CHECK(std::abs(margulis_alpha(conj) - c) < 1e-9);
  }
}

TEST_CASE("margulis alpha argument order flips the sign for even n") {
  const ModelData md = ModelData::make(2);
  Rng rng(32);
  const AffineIsometry g = random_proximal_affine(md, rng);
  const AffineProximalData pd = affine_proximal_data(g.linear());
  const Subspace v_att = orthogonal_complement(md.affine, pd.a_att);
  const Subspace v_rep = orthogonal_complement(md.affine, pd.a_rep);
  const double a_def = md.affine.inner(g.translation(), neutral_vector(v_rep, v_att));
  const double a_flip = md.affine.inner(g.translation(), neutral_vector(v_att, v_rep));
  CHECK(a_def == doctest::Approx(margulis_alpha(g)).epsilon(1e-12));
  CHECK(a_flip == doctest::Approx(-margulis_alpha(g)).epsilon(1e-12));
}

TEST_CASE("beta rational fixture") {
  // Exact-fraction oracle: core directions (1,1,0), (1,0,1), (1,0,-1),
  // (1,-1,0) with the base points below give beta = beta_direct = 1.
  const QSpace q0 = QSpace::affine_model(2);
  const AffineNullPlane a1 = from_core(q0, vec3(1, 1, 0), vec3(1, 2, 0));
  const AffineNullPlane a2 = from_core(q0, vec3(1, 0, 1), vec3(0, 1, 1));
  const AffineNullPlane a3 = from_core(q0, vec3(1, 0, -1), vec3(2, 0, 1));
  const AffineNullPlane a4 = from_core(q0, vec3(1, -1, 0), vec3(1, 1, -1));
  CHECK(beta(a1, a2, a3, a4) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(beta_direct(a1, a2, a3, a4) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("beta of linear null planes vanishes") {
  for (int n = 2; n <= 3; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(33 + n);
    auto tuple = random_affine_tuple(md, rng, 4);
    std::vector<AffineNullPlane> linear_planes;
    for (const auto& p : tuple)
      linear_planes.emplace_back(Vec::Zero(md.affine.dim()), p.direction());
    CHECK(std::abs(beta(linear_planes[0], linear_planes[1], linear_planes[2],
                        linear_planes[3])) < 1e-12);
  }
}

TEST_CASE("beta is independent of the representative base points") {
  const ModelData md = ModelData::make(3);
  Rng rng(34);
  auto t = random_affine_tuple(md, rng, 4);
  const double b = beta(t[0], t[1], t[2], t[3]);
  // Move each base point inside its plane.
  std::vector<AffineNullPlane> moved;
  for (const auto& p : t) {
    const Mat basis = p.direction().plane().basis();
    const Vec shift = basis * rng.vector(basis.cols(), -2.0, 2.0);
    moved.emplace_back(p.base_point() + shift, p.direction());
  }
  CHECK(std::abs(beta(moved[0], moved[1], moved[2], moved[3]) - b) < 1e-9);
}

TEST_CASE("beta agrees with beta_direct") {
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(35 + n);
    for (int trial = 0; trial < (n == 2 ? 50 : 20); ++trial) {
      auto t = random_affine_tuple(md, rng, 4);
      const double b = beta(t[0], t[1], t[2], t[3]);
      const double bd = beta_direct(t[0], t[1], t[2], t[3]);
      CHECK(std::abs(b - bd) < 1e-9 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST_CASE("beta antisymmetry in the last pair") {
  const ModelData md = ModelData::make(2);
  Rng rng(36);
  auto t = random_affine_tuple(md, rng, 4);
  CHECK(std::abs(beta(t[0], t[1], t[2], t[3]) + beta(t[0], t[1], t[3], t[2])) <
        1e-10);
}

TEST_CASE("cr identity suite") {
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(37 + n);
    auto t = random_affine_tuple(md, rng, 5);
    std::vector<AffineIsometry> isos;
    for (int i = 0; i < 20; ++i)
      isos.push_back(random_affine_isometry(md.affine, rng, 0.5));
    const CrReport r = cr_identity_suite({t[0], t[1], t[2], t[3]}, t[4], isos);
    CHECK(r.invariance < 1e-8);
    CHECK(r.sym_2143 < 1e-9);
    CHECK(r.antisym < 1e-9);
    CHECK(r.cocycle < 1e-9);
    if (n % 2 == 0) {
      CHECK(r.sym_3412 < 1e-8);
      CHECK(r.sym_4321 < 1e-8);
      CHECK(r.cyclic < 1e-8);
    } else {
      // Odd n: the pair-swapped neutral vectors keep their sign, so these two
      // rows flip sign instead of matching, and the cyclic sum moves by
      // twice the cross terms. Pin the flip relation exactly.
      const double b = beta(t[0], t[1], t[2], t[3]);
      CHECK(std::abs(beta(t[2], t[3], t[0], t[1]) + b) < 1e-9);
      CHECK(std::abs(beta(t[3], t[2], t[1], t[0]) + b) < 1e-9);
      CHECK(r.sym_3412 == doctest::Approx(2.0 * std::abs(b)).epsilon(1e-6));
      CHECK(r.cyclic > 1e-3);  // genuinely fails at odd n
    }
  }
}

TEST_CASE("theta rational fixture") {
  // Exact oracle: theta = -1/3 for these four isotropic lines.
  const QSpace q = QSpace::linear_model(2);
  const Subspace a1 = Subspace::span(q, vec4(1, 0, 1, 0));
  const Subspace a2 = Subspace::span(q, vec4(1, 0, 0, 1));
  const Subspace a3 = Subspace::span(q, vec4(3, 4, 0, 5));
  const Subspace a4 = Subspace::span(q, vec4(5, 0, 3, 4));
  CHECK(theta(a1, a2, a3, a4) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("theta is basis independent and scale invariant") {
  const ModelData md = ModelData::make(3);
  Rng rng(38);
  auto t = random_isotropic_tuple(md, rng, 4);
  const double th = theta(t[0], t[1], t[2], t[3]);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Subspace> rebased;
    for (const auto& s : t) {
      Mat m = rng.matrix(s.dim(), s.dim(), -1.0, 1.0) +
              2.5 * Mat::Identity(s.dim(), s.dim());
      rebased.emplace_back(md.linear, s.basis() * m);
    }
    CHECK(theta(rebased[0], rebased[1], rebased[2], rebased[3]) ==
          doctest::Approx(th).epsilon(1e-9));
  }
}

TEST_CASE("theta reciprocal identity") {
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(39 + n);
    for (int trial = 0; trial < 20; ++trial) {
      auto t = random_isotropic_tuple(md, rng, 4);
      const double p = theta(t[0], t[1], t[2], t[3]) *
                       theta(t[0], t[1], t[3], t[2]);
      CHECK(std::abs(p - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("ecr identity suite") {
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(40 + n);
    auto t = random_isotropic_tuple(md, rng, 5);
    std::vector<Isometry> isos;
    for (int i = 0; i < 20; ++i)
      isos.push_back(random_isometry(md.linear, rng, 0.5));
    const EcrReport r = ecr_identity_suite({t[0], t[1], t[2], t[3]}, t[4], isos);
    CHECK(r.invariance < 1e-8);
    CHECK(r.sym_2143 < 1e-9);
    CHECK(r.reciprocal < 1e-8);
    CHECK(r.cocycle < 1e-8);
    if (n % 2 == 0) {
      CHECK(r.sym_3412 < 1e-8);
      CHECK(r.sym_4321 < 1e-8);
      CHECK(r.cyclic < 1e-8);
    } else {
      // Odd n: theta(3,4,1,2) inverts instead of matching.
      const double th = theta(t[0], t[1], t[2], t[3]);
      CHECK(std::abs(theta(t[2], t[3], t[0], t[1]) * th - 1.0) < 1e-8);
      CHECK(r.sym_3412 > 1e-3);
    }
  }
}

TEST_CASE("lemid identity") {
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(41 + n);
    for (int trial = 0; trial < 20; ++trial) {
      auto t = random_isotropic_tuple(md, rng, 4);
      CHECK(lemid_check(t[0], t[1], t[2], t[3]) < 1e-9);
    }
    // Oracle-generated planes: images of the standard transverse pairs.
    for (int trial = 0; trial < 10; ++trial) {
      const Isometry g1 = random_isometry(md.linear, rng);
      const Isometry g2 = random_isometry(md.linear, rng);
      const Subspace s = transform(g1, md.W_plus());
      const Subspace ai = transform(g1, md.W_minus());
      const Subspace aj = transform(g2, md.W_plus());
      const Subspace ak = transform(g2, md.W_minus());
      if (!pair_well_conditioned(s, ai, 0.02) ||
          !pair_well_conditioned(s, aj, 0.02) ||
          !pair_well_conditioned(s, ak, 0.02))
        continue;
      CHECK(lemid_check(s, ai, aj, ak) < 1e-10);
    }
  }
}

TEST_CASE("lemid with j = k reduces to the reciprocal identity") {
  const ModelData md = ModelData::make(2);
  Rng rng(43);
  auto t = random_isotropic_tuple(md, rng, 3);
  CHECK(lemid_check(t[0], t[1], t[2], t[2]) < 1e-10);
}

TEST_CASE("alphabeta identity") {
  // 3d boost with a neutral translation against a random plane.
  const QSpace q0 = QSpace::affine_model(2);
  Mat x = Mat::Zero(3, 3);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  const Isometry boost = exp_isometry(q0, x, 2.0);
  const AffineIsometry g(boost, 0.8 * neutral_fixed_vector(boost));
  const ModelData md2 = ModelData::make(2);
  Rng rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    const AffineNullPlane a = random_affine_null_plane(md2, rng);
    try {
      CHECK(alphabeta_check(g, a) < 1e-9);
    } catch (const NotTransverse&) {
      continue;
    }
  }

  // Random proximal affine elements at n = 2, 3, 4.
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rngn(45 + n);
    int done = 0;
    while (done < 15) {
      try {
        const AffineIsometry gg = random_proximal_affine(md, rngn);
        const AffineNullPlane a = random_affine_null_plane(md, rngn);
        CHECK(alphabeta_check(gg, a) < 1e-8);
        ++done;
      } catch (const Error&) {
        continue;
      }
    }
  }

  // Pure linear proximal element: alpha = 0 and the cross-ratio vanishes.
  const AffineIsometry pure(boost, Vec::Zero(3));
  CHECK(std::abs(margulis_alpha(pure)) < 1e-12);
  Rng rng2(46);
  const AffineNullPlane a = random_affine_null_plane(md2, rng2);
  auto [am, ap] = invariant_affine_null_planes(pure);
  CHECK(std::abs(beta(am, ap, a.transformed(pure), a)) < 1e-9);
}

TEST_CASE("lambdabeta identity") {
  const ModelData md = ModelData::make(2);
  // Constructed spectrum (3, 1.5, 1/1.5, 1/3): lambda = 1.5, theta = 2.25.
  Mat x = Mat::Zero(4, 4);
  x(0, 2) = std::log(3.0);
  x(2, 0) = std::log(3.0);
  x(1, 3) = std::log(1.5);
  x(3, 1) = std::log(1.5);
  Rng rng(47);
  const Isometry noise = random_isometry(md.linear, rng, 0.4);
  const Isometry g = noise * exp_isometry(md.linear, x, 1.0) * noise.inverse();
  const ProximalData pd = proximal_data(g);
  int checked = 0;
  while (checked < 5) {
    const Subspace a_star = random_isotropic_plane(md, rng);
    try {
      const double th = theta(pd.a_rep, pd.a_att, transform(g, a_star), a_star);
      CHECK(th == doctest::Approx(2.25).epsilon(1e-8));
      CHECK(lambdabeta_check(g, a_star) < 1e-8);
      ++checked;
    } catch (const Error&) {
      continue;
    }
  }

  // Random proximal elements at n = 2, 3; also the inverse consistency.
  for (int n = 2; n <= 3; ++n) {
    const ModelData mdn = ModelData::make(n);
    Rng rngn(48 + n);
    int done = 0;
    while (done < 15) {
      try {
        const Isometry gg = random_proximal_linear(mdn, rngn);
        const Subspace a_star = random_isotropic_plane(mdn, rngn);
        CHECK(lambdabeta_check(gg, a_star) < 1e-8);
        const double li = lambda_labeled(gg.inverse());
        const double l = lambda_labeled(gg);
        const ProximalData pdg = proximal_data(gg);
        const double th_inv = theta(pdg.a_att, pdg.a_rep,
                                    transform(gg.inverse(), a_star), a_star);
        CHECK(std::abs(th_inv - 1.0 / (l * l)) < 1e-8 / (l * l));
        CHECK(std::abs(li - 1.0 / l) < 1e-9);
        ++done;
      } catch (const Error&) {
        continue;
      }
    }
  }
}

TEST_CASE("nu orthogonality on word planes and on random planes") {
  // Word planes of one Schottky representation.
  const DeformationFamily fam = build_deformation_example(2, 1.0, 99);
  const FreeRep rep = fam.at(0.0);
  const Word a = Word::generator(0);
  const Word b = Word::generator(1);
  const ProximalData pa = proximal_data(rep.evaluate(a));
  const ProximalData pconj = proximal_data(rep.evaluate(b * a * b.inverse()));
  const ProximalData pab = proximal_data(rep.evaluate(a * b));
  const Subspace& x = pa.a_rep;
  const Subspace& y = pa.a_att;
  CHECK(nu_orthogonality_check(x, y, pconj.a_att).max() < 1e-7);
  CHECK(nu_orthogonality_check(x, y, pab.a_att).max() < 1e-7);

  // The identity turns out to be algebraic: random transverse planes satisfy
  // it as well (measured; the original expectation of a violation for
  // off-group planes is refuted by the oracle).
  const ModelData md = ModelData::make(2);
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    auto t = random_isotropic_tuple(md, rng, 3);
    CHECK(nu_orthogonality_check(t[0], t[1], t[2]).max() < 1e-7);
  }
}

TEST_CASE("eta plane") {
  const ModelData md = ModelData::make(2);
  // Model case: eta(W+, W-) = span(W+, v+) = V+.
  const Subspace eta = eta_plane(md.W_plus(), md.W_minus());
  CHECK(eta.dim() == 2);
  Mat vplus_basis(4, 2);
  vplus_basis.col(0) = md.v_plus;
  vplus_basis.col(1) = md.w_plus.col(0);
  CHECK(same_plane(eta, Subspace(md.linear, vplus_basis)));

  // Independence of the second argument on word planes.
  const DeformationFamily fam = build_deformation_example(3, 1.0, 31);
  const FreeRep rep = fam.at(0.0);
  const Word a = Word::generator(0);
  const Word b = Word::generator(1);
  const Subspace x = proximal_data(rep.evaluate(a)).a_att;
  const std::vector<Word> ys{b, b * a, a * b * b};
  std::vector<Subspace> etas;
  for (const auto& w : ys)
    etas.push_back(eta_plane(x, proximal_data(rep.evaluate(w)).a_att));
  for (size_t i = 1; i < etas.size(); ++i) {
    CHECK(etas[i].dim() == 3);
    CHECK(max_principal_angle(etas[0], etas[i]) < 1e-7);
  }
}
