#pragma once

#include <vector>

#include "marg/diagnostics.hpp"
#include "marg/dynamics.hpp"
#include "marg/groups.hpp"
#include "marg/invariants.hpp"
#include "marg/neutral.hpp"
#include "marg/qspace.hpp"
#include "marg/rng.hpp"

namespace marg::fixtures {

inline Isometry random_isometry(const QSpace& space, Rng& rng,
                                double scale = 0.8) {
  const Mat x1 = random_lie(space, rng, scale);
  const Mat x2 = random_lie(space, rng, scale);
  return exp_isometry(space, x1, 1.0) * exp_isometry(space, x2, 1.0);
}

inline AffineIsometry random_affine_isometry(const QSpace& space, Rng& rng,
                                             double scale = 0.6,
                                             double translation = 1.0) {
  return AffineIsometry(random_isometry(space, rng, scale),
                        rng.vector(space.dim(), -translation, translation));
}

inline Subspace random_isotropic_plane(const ModelData& md, Rng& rng,
                                       double scale = 0.8) {
  return transform(random_isometry(md.linear, rng, scale), md.W_plus());
}

inline AffineNullPlane random_affine_null_plane(const ModelData& md, Rng& rng,
                                                double scale = 0.8,
                                                double base_scale = 1.0) {
  const Subspace core = transform(random_isometry(md.affine, rng, scale),
                                  md.W_plus_affine());
  return AffineNullPlane(rng.vector(md.affine.dim(), -base_scale, base_scale),
                         NullPlane::from_isotropic(core));
}

// Conditioning floor for a pair of isotropic planes: the dual pairing must be
// well invertible and the 2-plane of neutral lines must have healthy
// signature. Keeps identity-suite residuals at the 1e-10 level.
inline bool pair_well_conditioned(const Subspace& a, const Subspace& b,
                                  double floor_sv = 0.1) {
  const QSpace& space = a.space();
  try {
    const Mat pa = a.orthonormal_basis();
    const Mat pb = b.orthonormal_basis();
    Eigen::JacobiSVD<Mat> svd(pa.transpose() * space.gram() * pb);
    if (svd.singularValues().minCoeff() < floor_sv) return false;
    const Subspace e = intersect(orthogonal_complement(space, a),
                                 orthogonal_complement(space, b), 1e-9);
    if (e.dim() != 2) return false;
    const Mat be = e.orthonormal_basis();
    Eigen::SelfAdjointEigenSolver<Mat> es(be.transpose() * space.gram() * be);
    return es.eigenvalues().cwiseAbs().minCoeff() > floor_sv;
  } catch (const Error&) {
    return false;
  }
}

inline bool null_pair_well_conditioned(const AffineNullPlane& a,
                                       const AffineNullPlane& b,
                                       double floor_sv = 0.1) {
  const QSpace& space = a.direction().plane().space();
  try {
    const Subspace ca = a.direction().isotropic_core();
    const Subspace cb = b.direction().isotropic_core();
    const Mat pa = ca.orthonormal_basis();
    const Mat pb = cb.orthonormal_basis();
    if (ca.dim() > 0) {
      Eigen::JacobiSVD<Mat> svd(pa.transpose() * space.gram() * pb);
      if (svd.singularValues().minCoeff() < floor_sv) return false;
    }
    const Subspace core =
        intersect(a.direction().plane(), b.direction().plane(), 1e-9);
    if (core.dim() != 1) return false;
    const Vec w = core.basis().col(0);
    return space.inner(w, w) < -floor_sv;
  } catch (const Error&) {
    return false;
  }
}

inline std::vector<Subspace> random_isotropic_tuple(const ModelData& md,
                                                    Rng& rng, int count,
                                                    double floor_sv = 0.1) {
  for (int attempt = 0; attempt < 2000; ++attempt) {
    std::vector<Subspace> out;
    bool ok = true;
    for (int i = 0; i < count && ok; ++i) {
      out.push_back(random_isotropic_plane(md, rng));
      for (int j = 0; j + 1 < static_cast<int>(out.size()) && ok; ++j)
        ok = pair_well_conditioned(out[i], out[j], floor_sv) &&
             pair_well_conditioned(out[j], out[i], floor_sv);
    }
    if (ok) return out;
  }
  throw DegenerateInput("random_isotropic_tuple: rejection sampling exhausted");
}

inline std::vector<AffineNullPlane> random_affine_tuple(const ModelData& md,
                                                        Rng& rng, int count,
                                                        double floor_sv = 0.1) {
  for (int attempt = 0; attempt < 2000; ++attempt) {
    std::vector<AffineNullPlane> out;
    bool ok = true;
    for (int i = 0; i < count && ok; ++i) {
      out.push_back(random_affine_null_plane(md, rng));
      for (int j = 0; j + 1 < static_cast<int>(out.size()) && ok; ++j)
        ok = null_pair_well_conditioned(out[i], out[j], floor_sv);
    }
    if (ok) return out;
  }
  throw DegenerateInput("random_affine_tuple: rejection sampling exhausted");
}

// Regular hyperbolic element of the (n,n) model: distinct boost rates on the
// coordinate hyperbolic planes, mid pair from the smallest rate, conjugated to
// general position.
inline Isometry random_proximal_linear(const ModelData& md, Rng& rng,
                                       double mid_rate = 0.5,
                                       double outer_base = 2.0) {
  const int n = md.n;
  const QSpace& space = md.linear;
  Mat x = Mat::Zero(2 * n, 2 * n);
  x(0, n) = mid_rate;
  x(n, 0) = mid_rate;
  for (int i = 1; i < n; ++i) {
    const double rate = outer_base * (1.0 + 0.25 * (i - 1)) + rng.unit();
    x(i, n + i) = rate;
    x(n + i, i) = rate;
  }
  const Isometry h = random_isometry(space, rng, 0.5);
  return h * exp_isometry(space, x, 1.0) * h.inverse();
}

// Proximal element of the (n-1,n) model with simple eigenvalue one.
inline Isometry random_proximal_affine_linear(const ModelData& md, Rng& rng,
                                              double outer_base = 2.0) {
  const int n = md.n;
  const QSpace& space = md.affine;
  Mat x = Mat::Zero(2 * n - 1, 2 * n - 1);
  for (int i = 0; i < n - 1; ++i) {
    const double rate = outer_base * (1.0 + 0.25 * i) + rng.unit();
    x(i, n + i) = rate;
    x(n + i, i) = rate;
  }
  const Isometry h = random_isometry(space, rng, 0.5);
  return h * exp_isometry(space, x, 1.0) * h.inverse();
}

inline AffineIsometry random_proximal_affine(const ModelData& md, Rng& rng,
                                             double translation = 1.0) {
  return AffineIsometry(
      random_proximal_affine_linear(md, rng),
      rng.vector(md.affine.dim(), -translation, translation));
}

}  // namespace marg::fixtures
