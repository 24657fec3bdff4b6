#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"

using namespace marg;

namespace {

const std::vector<double> kSchedule{1e-2, 1e-3, 1e-4, 1e-5};

}  // namespace

TEST_CASE("derivative check against the Margulis invariant") {
  const DeformationFamily fam = build_deformation_example(2, 1.5, 77);
  const Word a = Word::generator(0);
  const Word b = Word::generator(1);
  for (const Word& w : {a, b, a * b, b * a.inverse(), a * b * a}) {
    const DerivativeReport r = deriv_check(fam, w, kSchedule);
    CHECK(r.mismatch < 1e-6);
    CHECK(r.observed_order == doctest::Approx(2.0).epsilon(0.15));
    CHECK(r.target_agreement < 1e-8);
    CHECK(r.lambda_at_zero == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("derivative check with zero directions") {
  const DeformationFamily fam = build_deformation_example(2, 1.0, 5);
  const DeformationFamily zero(fam.base(), {Mat::Zero(4, 4), Mat::Zero(4, 4)});
  const Word w = Word::generator(0) * Word::generator(1);
  const DerivativeReport r = deriv_check(zero, w, kSchedule);
  CHECK(std::abs(r.richardson) < 1e-10);
  CHECK(std::abs(r.alpha) < 1e-10);
  CHECK(r.mismatch < 1e-10);
}

TEST_CASE("undeformed mid eigenvalue is one for every word") {
  const DeformationFamily fam = build_deformation_example(2, 1.0, 13);
  const FreeRep rep0 = fam.at(0.0);
  const Word a = Word::generator(0);
  const Word b = Word::generator(1);
  for (const Word& w : {a, b, a * b, b * a, a * b.inverse(), (a * b).power(2)}) {
    CHECK(lambda_labeled(rep0.evaluate(w)) == doctest::Approx(1.0).epsilon(1e-10));
    const OrbitRates r = orbit_rates(rep0, w);
    CHECK(std::abs(*r.log_lambda) < 1e-10);
  }
}

TEST_CASE("alpha limits on the Schottky fixture") {
  const AffineFreeRep aff = build_schottky_so12_affine(1.6, 1.0, 7);
  const Word gamma = Word::generator(0);
  const Word eta = Word::generator(1);

  const ConvergenceReport fixed1 = alpha_limit_fixed_k(aff, gamma, eta, 1, 8);
  CHECK(fixed1.verdict == Verdict::Converging);
  CHECK(fixed1.final_error() < 1e-3);
  CHECK(fixed1.fitted_slope < -0.1);

  const ConvergenceReport fixed2 = alpha_limit_fixed_k(aff, gamma, eta, 2, 8);
  CHECK(fixed2.verdict == Verdict::Converging);

  const ConvergenceReport diag = alpha_limit_diag(aff, gamma, eta, 8);
  CHECK(diag.verdict == Verdict::Converging);
  CHECK(diag.final_error() < 1e-3);

  CHECK_THROWS_AS(alpha_limit_fixed_k(aff, gamma, gamma, 1, 4), NotTransverse);
}

TEST_CASE("theta limits on a linear Schottky fixture") {
  const DeformationFamily fam = build_deformation_example(2, 1.2, 7);
  const FreeRep rep = fam.at(0.08);
  const Word gamma = Word::generator(0);
  const Word eta = Word::generator(1);

  const ConvergenceReport fixed1 = theta_limit_fixed_k(rep, gamma, eta, 1, 8);
  CHECK(fixed1.verdict == Verdict::Converging);
  CHECK(fixed1.final_error() < 1e-3);

  const ConvergenceReport fixed2 = theta_limit_fixed_k(rep, gamma, eta, 2, 8);
  CHECK(fixed2.verdict == Verdict::Converging);

  const ConvergenceReport diag = theta_limit_diag(rep, gamma, eta, 8);
  CHECK(diag.verdict == Verdict::Converging);
  CHECK(diag.final_error() < 1e-3);

  CHECK_THROWS_AS(theta_limit_diag(rep, gamma, gamma, 4), NotTransverse);
}

TEST_CASE("orbit rates power identity") {
  const DeformationFamily fam = build_deformation_example(2, 1.2, 7);
  const FreeRep rep = fam.at(0.08);
  const Word w = Word::generator(0) * Word::generator(1);
  const OrbitRates r1 = orbit_rates(rep, w);
  const OrbitRates r2 = orbit_rates(rep, w.power(2));
  CHECK(*r2.log_lambda ==
        doctest::Approx(2.0 * *r1.log_lambda).epsilon(1e-7));
  // Cyclically reduced words double their length under squaring, so the
  // normalized rate is stable.
  CHECK(w.is_cyclically_reduced());
  CHECK(r2.word_length == 2 * r1.word_length);
  CHECK(*r2.log_lambda_normalized ==
        doctest::Approx(*r1.log_lambda_normalized).epsilon(1e-7));

  const AffineFreeRep aff = build_schottky_so12_affine(2.0, 1.0, 3);
  const OrbitRates ra = orbit_rates(aff, w);
  const OrbitRates ra2 = orbit_rates(aff, w.power(2));
  CHECK(*ra2.alpha == doctest::Approx(2.0 * *ra.alpha).epsilon(1e-8));
  CHECK(*ra2.alpha_normalized ==
        doctest::Approx(*ra.alpha_normalized).epsilon(1e-8));

  CHECK_THROWS_AS(orbit_rates(rep, Word()), NotProximal);
}

TEST_CASE("convergence report plumbing") {
  ConvergenceReport r = finish_report({1, 2, 3, 4}, {1.5, 1.25, 1.125, 1.0625},
                                      1.0, false, {}, 1e-1);
  CHECK(r.verdict == Verdict::Converging);
  CHECK(r.fitted_slope < -0.5);
  ConvergenceReport s = finish_report({1, 2, 3}, {1.0, 2.0, 4.0}, 0.0, false,
                                      {}, 1e-3);
  CHECK(s.verdict == Verdict::Diverging);
}
