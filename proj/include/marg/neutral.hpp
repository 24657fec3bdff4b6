#pragma once

#include "marg/qspace.hpp"

namespace marg {

// The two isotropic lines attached to an ordered transverse pair of isotropic
// (n-1)-planes in the (n,n) model, labeled deterministically.
//
// Labeling rule: with dual bases (a_i) of A and (b_i) of B and the two
// isotropic unit vectors u, u' of A' cap B' paired positively, v_plus is the
// candidate whose determinant det[u, a_1..a_{n-1}, u', b_1..b_{n-1}] has the
// per-n calibration sign. The calibration anchors the model pair (W+, W-) to
// the line of v+; base changes cancel in the determinant, so the rule depends
// only on the planes and is equivariant under isometries of determinant one.
struct LabeledPair {
  Subspace a, b;
  Vec v_plus;   // unit, first nonzero coordinate positive
  Vec v_minus;  // unit, the other isotropic line
};

LabeledPair labeled_neutral_lines(const Subspace& a, const Subspace& b,
                                  double tol = 1e-10);

// Unit timelike vector spanning V_i cap V_j for transverse null planes of the
// (n-1,n) model, with the sign fixed by the analogous determinant rule on dual
// bases of (V_i^perp, V_j^perp). Calibrated so that the model pair
// (W+^perp, W-^perp) yields +v.
Vec neutral_vector(const Subspace& v_i, const Subspace& v_j,
                   double tol = 1e-10);

// Calibration signs, computed once per n from the model data and cached.
int labeling_sign_linear(int n);
int labeling_sign_affine(int n);

}  // namespace marg
