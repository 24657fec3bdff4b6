#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "marg/asymptotics.hpp"
#include "marg/groups.hpp"

namespace marg {

// All freely reduced words of length 1..max_length over rank generators,
// shortest first, lexicographic in the letters within each length.
std::vector<Word> enumerate_reduced_words(int rank, int max_length);

enum class SpectrumVerdict {
  NecessaryConditionsHoldUpToL,
  OppositeSignsFound,
  Inconclusive
};

const char* spectrum_verdict_name(SpectrumVerdict v);

struct SpectrumRow {
  Word word;
  int length = 0;
  double value = 0.0;       // alpha or log lambda
  double normalized = 0.0;  // value / length
  double gap_outer = 0.0;
  double gap_mid = 0.0;
};

struct SpectrumFailure {
  Word word;
  std::string reason;
};

struct SpectrumReport {
  std::vector<SpectrumRow> rows;
  std::vector<SpectrumFailure> failures;  // words that were not proximal
  double min_value = 0.0;
  double max_value = 0.0;
  double min_abs_normalized = 0.0;
  int count = 0;
  // Pairs of row indices with opposite signs, both above sign_tol; each
  // offender is paired with the first row of the other sign.
  std::vector<std::pair<int, int>> sign_violations;
  SpectrumVerdict verdict = SpectrumVerdict::Inconclusive;
  double sign_tol = 1e-8;
};

// Margulis invariants of every reduced word up to max_length.
SpectrumReport margulis_spectrum(const AffineFreeRep& rep, int max_length,
                                 double sign_tol = 1e-8, double gap_tol = 1e-6,
                                 int jobs = 1);

// log lambda of every reduced word up to max_length (the (n,n) model).
SpectrumReport eigen_gap_spectrum(const FreeRep& rep, int max_length,
                                  double sign_tol = 1e-8, double gap_tol = 1e-6,
                                  int jobs = 1);

// Two-generator affine fixture on R^3: hyperbolic linear parts exp(s X) with
// transversal axes, translations c * (neutral direction) plus seeded noise
// orthogonal to it. Margulis invariants of the generators equal c exactly.
AffineFreeRep build_schottky_so12_affine(double s, double c,
                                         std::uint64_t seed);

// Schottky pair in the (n-1,n) model (regular boosts conjugated by seeded
// isometries) with seeded Lie-algebra deformation directions of scale s.
DeformationFamily build_deformation_example(int n, double s,
                                            std::uint64_t seed);

}  // namespace marg
