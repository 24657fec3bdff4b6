// Scratch driver for oracle experiments; replaced by the real CLI later.
#include <cmath>
#include <cstdio>
#include <vector>

#include "marg/asymptotics.hpp"
#include "marg/diagnostics.hpp"
#include "marg/invariants.hpp"

using namespace marg;

namespace {

Isometry random_isometry(const QSpace& space, Rng& rng, double scale = 0.8) {
  const Mat x1 = random_lie(space, rng, scale);
  const Mat x2 = random_lie(space, rng, scale);
  return exp_isometry(space, x1, 1.0) * exp_isometry(space, x2, 1.0);
}

Subspace random_isotropic_plane(const ModelData& md, Rng& rng) {
  return transform(random_isometry(md.linear, rng), md.W_plus());
}

bool pair_ok(const Subspace& a, const Subspace& b) {
  try {
    labeled_neutral_lines(a, b);
    return true;
  } catch (const Error&) {
    return false;
  }
}

AffineNullPlane random_affine_null_plane(const ModelData& md, Rng& rng) {
  const Subspace core =
      transform(random_isometry(md.affine, rng), md.W_plus_affine());
  return AffineNullPlane(rng.vector(md.affine.dim(), -1.0, 1.0),
                         NullPlane::from_isotropic(core));
}

bool affine_pair_ok(const AffineNullPlane& a, const AffineNullPlane& b) {
  try {
    neutral_vector(a.direction().plane(), b.direction().plane());
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

int main() {
  // E1/E2: swap behavior of the labeling rules per n.
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(1000 + n);
    int swap_exchanges = 0, swap_fixes = 0, nu_anti = 0, nu_sym = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const Isometry g = random_isometry(md.linear, rng);
      const Subspace a = transform(g, md.W_plus());
      const Subspace b = transform(g, md.W_minus());
      const LabeledPair ab = labeled_neutral_lines(a, b);
      const LabeledPair ba = labeled_neutral_lines(b, a);
      const double ex = std::abs(ba.v_plus.dot(ab.v_minus));
      const double fx = std::abs(ba.v_plus.dot(ab.v_plus));
      if (ex > 1.0 - 1e-9) ++swap_exchanges;
      if (fx > 1.0 - 1e-9) ++swap_fixes;

      const Isometry h = random_isometry(md.affine, rng);
      const Subspace vi = orthogonal_complement(
          md.affine, transform(h, md.W_plus_affine()));
      const Subspace vj = orthogonal_complement(
          md.affine, transform(h, md.W_minus_affine()));
      const Vec nij = neutral_vector(vi, vj);
      const Vec nji = neutral_vector(vj, vi);
      if ((nij + nji).norm() < 1e-8) ++nu_anti;
      if ((nij - nji).norm() < 1e-8) ++nu_sym;
    }
    std::printf("n=%d swap: exchanges=%d fixes=%d | nu: anti=%d sym=%d\n", n,
                swap_exchanges, swap_fixes, nu_anti, nu_sym);
  }

  // Oracle equivariance: labeled plus of (gW+, gW-) vs g v+.
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(2000 + n);
    double worst = 0.0, worst_nu = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Isometry g = random_isometry(md.linear, rng);
      const LabeledPair lp = labeled_neutral_lines(transform(g, md.W_plus()),
                                                   transform(g, md.W_minus()));
      const Vec target = (g.matrix() * md.v_plus).normalized();
      worst = std::max(worst, 1.0 - std::abs(lp.v_plus.dot(target)));

      const Isometry h = random_isometry(md.affine, rng);
      const Vec nu = neutral_vector(
          orthogonal_complement(md.affine, transform(h, md.W_plus_affine())),
          orthogonal_complement(md.affine, transform(h, md.W_minus_affine())));
      worst_nu = std::max(worst_nu, (nu - h.matrix() * md.v).norm());
    }
    std::printf("n=%d oracle: 1-|cos| lines=%.2e | nu mismatch=%.2e\n", n,
                worst, worst_nu);
  }

  // E3: nu0 orthogonality on random independent planes.
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(3000 + n);
    double max_resid = 0.0, min_resid = 1e9;
    int done = 0, attempts = 0;
    while (done < 40 && attempts < 4000) {
      ++attempts;
      const Subspace x = random_isotropic_plane(md, rng);
      const Subspace y = random_isotropic_plane(md, rng);
      const Subspace z = random_isotropic_plane(md, rng);
      if (!pair_ok(x, y) || !pair_ok(x, z)) continue;
      const NuOrthogonality r = nu_orthogonality_check(x, y, z);
      max_resid = std::max(max_resid, r.max());
      min_resid = std::min(min_resid, r.max());
      ++done;
    }
    std::printf("n=%d random-plane nu0: samples=%d min=%.3e max=%.3e\n", n,
                done, min_resid, max_resid);
  }

  // E4: lem:id on random tuples.
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(4000 + n);
    double worst = 0.0;
    int done = 0, attempts = 0;
    while (done < 40 && attempts < 4000) {
      ++attempts;
      const Subspace s = random_isotropic_plane(md, rng);
      const Subspace ai = random_isotropic_plane(md, rng);
      const Subspace aj = random_isotropic_plane(md, rng);
      const Subspace ak = random_isotropic_plane(md, rng);
      if (!pair_ok(s, ai) || !pair_ok(s, aj) || !pair_ok(s, ak)) continue;
      worst = std::max(worst, lemid_check(s, ai, aj, ak));
      ++done;
    }
    std::printf("n=%d lem:id worst over %d: %.3e\n", n, done, worst);
  }

  // E5: cr and ecr identity rows on random tuples.
  for (int n = 2; n <= 4; ++n) {
    const ModelData md = ModelData::make(n);
    Rng rng(5000 + n);
    int done = 0, attempts = 0;
    CrReport worst_cr;
    EcrReport worst_ecr;
    while (done < 20 && attempts < 6000) {
      ++attempts;
      std::vector<AffineNullPlane> planes;
      std::vector<Subspace> iso;
      bool reject = false;
      for (int i = 0; i < 5 && !reject; ++i) {
        planes.push_back(random_affine_null_plane(md, rng));
        iso.push_back(random_isotropic_plane(md, rng));
        for (int j = 0; j < i; ++j) {
          if (!affine_pair_ok(planes[i], planes[j])) reject = true;
          if (!pair_ok(iso[i], iso[j]) || !pair_ok(iso[j], iso[i]))
            reject = true;
        }
      }
      if (reject) continue;
      std::vector<AffineIsometry> affs;
      std::vector<Isometry> isos;
      for (int i = 0; i < 5; ++i) {
        affs.emplace_back(random_isometry(md.affine, rng),
                          rng.vector(md.affine.dim(), -1.0, 1.0));
        isos.push_back(random_isometry(md.linear, rng));
      }
      const CrReport cr = cr_identity_suite(
          {planes[0], planes[1], planes[2], planes[3]}, planes[4], affs);
      const EcrReport ec = ecr_identity_suite(
          {iso[0], iso[1], iso[2], iso[3]}, iso[4], isos);
      worst_cr.invariance = std::max(worst_cr.invariance, cr.invariance);
      worst_cr.sym_2143 = std::max(worst_cr.sym_2143, cr.sym_2143);
      worst_cr.sym_3412 = std::max(worst_cr.sym_3412, cr.sym_3412);
      worst_cr.sym_4321 = std::max(worst_cr.sym_4321, cr.sym_4321);
      worst_cr.antisym = std::max(worst_cr.antisym, cr.antisym);
      worst_cr.cyclic = std::max(worst_cr.cyclic, cr.cyclic);
      worst_cr.cocycle = std::max(worst_cr.cocycle, cr.cocycle);
      worst_ecr.invariance = std::max(worst_ecr.invariance, ec.invariance);
      worst_ecr.sym_2143 = std::max(worst_ecr.sym_2143, ec.sym_2143);
      worst_ecr.sym_3412 = std::max(worst_ecr.sym_3412, ec.sym_3412);
      worst_ecr.sym_4321 = std::max(worst_ecr.sym_4321, ec.sym_4321);
      worst_ecr.reciprocal = std::max(worst_ecr.reciprocal, ec.reciprocal);
      worst_ecr.cyclic = std::max(worst_ecr.cyclic, ec.cyclic);
      worst_ecr.cocycle = std::max(worst_ecr.cocycle, ec.cocycle);
      ++done;
    }
    std::printf(
        "n=%d cr(%d): inv=%.1e 2143=%.1e 3412=%.1e 4321=%.1e anti=%.1e "
        "cyc=%.1e coc=%.1e\n",
        n, done, worst_cr.invariance, worst_cr.sym_2143, worst_cr.sym_3412,
        worst_cr.sym_4321, worst_cr.antisym, worst_cr.cyclic, worst_cr.cocycle);
    std::printf(
        "n=%d ecr(%d): inv=%.1e 2143=%.1e 3412=%.1e 4321=%.1e rec=%.1e "
        "cyc=%.1e coc=%.1e\n",
        n, done, worst_ecr.invariance, worst_ecr.sym_2143, worst_ecr.sym_3412,
        worst_ecr.sym_4321, worst_ecr.reciprocal, worst_ecr.cyclic,
        worst_ecr.cocycle);
  }

  // E6-E9: lambda orientation, derivative sign, alphabeta, lambdabeta.
  {
    const ModelData md = ModelData::make(2);
    Rng rng(7100);
    const DeformationFamily fam = build_deformation_example(2, 1.5, 77);
    const Word a = Word::generator(0);
    const Word b = Word::generator(1);
    const Word w = a * b;
    const Isometry g0 = fam.at(0.0).evaluate(w);
    std::printf("lambda labeled at t=0: %.6f (expect 1)\n",
                lambda_labeled(g0));
    const Isometry gt = fam.at(0.05).evaluate(w);
    std::printf("lambda labeled/tracked at t=0.05: %.6f / %.6f\n",
                lambda_labeled(gt), lambda_tracked(gt));
    const DerivativeReport dr =
        deriv_check(fam, w, {1e-2, 1e-3, 1e-4, 1e-5});
    std::printf(
        "deriv: richardson=%.8f alpha=%.8f mismatch=%.2e order=%.2f agree=%.2e\n",
        dr.richardson, dr.alpha, dr.mismatch, dr.observed_order,
        dr.target_agreement);

    // alphabeta + lambdabeta on random proximal elements.
    double worst_ab = 0.0, worst_lb = 0.0;
    double min_lambda = 1e9;
    int done = 0, attempts = 0;
    while (done < 20 && attempts < 2000) {
      ++attempts;
      try {
        const Isometry h = random_isometry(md.affine, rng, 0.5);
        Mat x = Mat::Zero(3, 3);
        x(0, 1) = 2.0 + rng.unit();
        x(1, 0) = x(0, 1);
        const Isometry lin = h * exp_isometry(md.affine, x, 1.0) * h.inverse();
        const AffineIsometry g(lin, rng.vector(3, -1.0, 1.0));
        const AffineNullPlane a_test = random_affine_null_plane(md, rng);
        worst_ab = std::max(worst_ab, alphabeta_check(g, a_test));

        const Isometry gl = random_isometry(md.linear, rng, 0.4);
        Mat xl = Mat::Zero(4, 4);
        xl(1, 3) = 1.6 + rng.unit();
        xl(3, 1) = xl(1, 3);
        xl(0, 2) = 0.7 + 0.3 * rng.unit();
        xl(2, 0) = xl(0, 2);
        const Isometry glin = gl * exp_isometry(md.linear, xl, 1.0) * gl.inverse();
        const Subspace a_star = random_isotropic_plane(md, rng);
        worst_lb = std::max(worst_lb, lambdabeta_check(glin, a_star));
        min_lambda = std::min(min_lambda, lambda_labeled(glin));
        ++done;
      } catch (const Error&) {
        continue;
      }
    }
    std::printf("alphabeta worst=%.3e lambdabeta worst=%.3e minlam=%.4f (over %d)\n",
                worst_ab, worst_lb, min_lambda, done);
  }
  return 0;
}
