#include "marg/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "marg/dynamics.hpp"
#include "marg/invariants.hpp"

namespace marg {

std::vector<Word> enumerate_reduced_words(int rank, int max_length) {
  if (rank < 1 || max_length < 1)
    throw DegenerateInput("enumerate_reduced_words: rank and length must be >= 1");
  // Letters ordered 1 < -1 < 2 < -2 < ...
  std::vector<int> alphabet;
  for (int i = 1; i <= rank; ++i) {
    alphabet.push_back(i);
    alphabet.push_back(-i);
  }
  std::vector<Word> out;
  std::vector<std::vector<int>> current;
  for (int l : alphabet) current.push_back({l});
  for (int len = 1; len <= max_length; ++len) {
    for (const auto& w : current) out.emplace_back(w);
    if (len == max_length) break;
    std::vector<std::vector<int>> next;
    next.reserve(current.size() * (2 * rank - 1));
    for (const auto& w : current)
      for (int l : alphabet) {
        if (w.back() == -l) continue;
        auto ext = w;
        ext.push_back(l);
        next.push_back(std::move(ext));
      }
    current = std::move(next);
  }
  return out;
}

const char* spectrum_verdict_name(SpectrumVerdict v) {
  switch (v) {
    case SpectrumVerdict::NecessaryConditionsHoldUpToL:
      return "NecessaryConditionsHoldUpToL";
    case SpectrumVerdict::OppositeSignsFound:
      return "OppositeSignsFound";
    case SpectrumVerdict::Inconclusive:
      return "Inconclusive";
  }
  return "?";
}

namespace {

struct WordOutcome {
  bool ok = false;
  SpectrumRow row;
  std::string reason;
};

// Deterministic parallel map: results land in a pre-sized vector by index,
// aggregation happens in word order afterwards.
template <typename Fn>
std::vector<WordOutcome> scan_words(const std::vector<Word>& words, int jobs,
                                    Fn&& per_word) {
  std::vector<WordOutcome> out(words.size());
  const int workers = std::max(1, jobs);
  if (workers == 1) {
    for (size_t i = 0; i < words.size(); ++i) out[i] = per_word(words[i]);
    return out;
  }
  std::vector<std::thread> pool;
  std::atomic<size_t> cursor{0};
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&]() {
      for (;;) {
        const size_t i = cursor.fetch_add(1);
        if (i >= words.size()) return;
        out[i] = per_word(words[i]);
      }
    });
  for (auto& th : pool) th.join();
  return out;
}

SpectrumReport aggregate(const std::vector<Word>& words,
                         std::vector<WordOutcome> outcomes, double sign_tol) {
  SpectrumReport rep;
  rep.sign_tol = sign_tol;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].ok)
      rep.rows.push_back(std::move(outcomes[i].row));
    else
      rep.failures.push_back({words[i], std::move(outcomes[i].reason)});
  }
  rep.count = static_cast<int>(rep.rows.size());
  if (rep.rows.empty()) {
    rep.verdict = SpectrumVerdict::Inconclusive;
    return rep;
  }
  rep.min_value = rep.rows.front().value;
  rep.max_value = rep.rows.front().value;
  rep.min_abs_normalized = std::abs(rep.rows.front().normalized);
  for (const auto& r : rep.rows) {
    rep.min_value = std::min(rep.min_value, r.value);
    rep.max_value = std::max(rep.max_value, r.value);
    rep.min_abs_normalized =
        std::min(rep.min_abs_normalized, std::abs(r.normalized));
  }
  int first_pos = -1, first_neg = -1;
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    if (rep.rows[i].value > sign_tol && first_pos < 0)
      first_pos = static_cast<int>(i);
    if (rep.rows[i].value < -sign_tol && first_neg < 0)
      first_neg = static_cast<int>(i);
  }
  if (first_pos >= 0 && first_neg >= 0) {
    for (size_t i = 0; i < rep.rows.size(); ++i) {
      if (rep.rows[i].value < -sign_tol)
        rep.sign_violations.emplace_back(first_pos, static_cast<int>(i));
      else if (rep.rows[i].value > sign_tol &&
               static_cast<int>(i) != first_pos)
        rep.sign_violations.emplace_back(first_neg, static_cast<int>(i));
    }
    rep.verdict = SpectrumVerdict::OppositeSignsFound;
  } else if (first_pos >= 0 || first_neg >= 0) {
    // Same sign throughout; inconclusive if some words sit at zero.
    bool all_away_from_zero = true;
    for (const auto& r : rep.rows)
      if (std::abs(r.value) <= sign_tol) all_away_from_zero = false;
    rep.verdict = all_away_from_zero
                      ? SpectrumVerdict::NecessaryConditionsHoldUpToL
                      : SpectrumVerdict::Inconclusive;
  } else {
    rep.verdict = SpectrumVerdict::Inconclusive;
  }
  return rep;
}

}  // namespace

SpectrumReport margulis_spectrum(const AffineFreeRep& rep, int max_length,
                                 double sign_tol, double gap_tol, int jobs) {
  const std::vector<Word> words = enumerate_reduced_words(rep.rank(), max_length);
  auto outcomes = scan_words(words, jobs, [&](const Word& w) {
    WordOutcome o;
    try {
      const AffineIsometry g = rep.evaluate(w);
      AffineProximalData pd = affine_proximal_data(g.linear(), gap_tol);
      const double a = margulis_alpha(g, gap_tol);
      o.row = SpectrumRow{w, w.length(), a, a / w.length(), pd.gap_outer,
                          pd.gap_mid};
      o.ok = true;
    } catch (const Error& e) {
      o.reason = e.what();
    }
    return o;
  });
  return aggregate(words, std::move(outcomes), sign_tol);
}

SpectrumReport eigen_gap_spectrum(const FreeRep& rep, int max_length,
                                  double sign_tol, double gap_tol, int jobs) {
  const std::vector<Word> words = enumerate_reduced_words(rep.rank(), max_length);
  auto outcomes = scan_words(words, jobs, [&](const Word& w) {
    WordOutcome o;
    try {
      const Isometry g = rep.evaluate(w);
      ProximalData pd = proximal_data(g, gap_tol);
      const double ll = std::log(lambda_labeled(g, gap_tol));
      o.row = SpectrumRow{w, w.length(), ll, ll / w.length(), pd.gap_outer,
                          pd.gap_mid};
      o.ok = true;
    } catch (const Error& e) {
      o.reason = e.what();
    }
    return o;
  });
  return aggregate(words, std::move(outcomes), sign_tol);
}

AffineFreeRep build_schottky_so12_affine(double s, double c,
                                         std::uint64_t seed) {
  const QSpace space = QSpace::affine_model(2);
  Mat x1 = Mat::Zero(3, 3);
  x1(0, 1) = 1.0;
  x1(1, 0) = 1.0;
  // Rotation in the negative-definite (e2, e3) plane moves the second axis
  // transversally to the first.
  Mat rot = Mat::Identity(3, 3);
  const double phi = M_PI / 2.0;
  rot(1, 1) = std::cos(phi);
  rot(1, 2) = -std::sin(phi);
  rot(2, 1) = std::sin(phi);
  rot(2, 2) = std::cos(phi);
  const Mat x2 = rot * x1 * rot.transpose();

  Rng rng(seed);
  std::vector<AffineIsometry> gens;
  for (const Mat& x : {x1, x2}) {
    Isometry g = exp_isometry(space, x, s);
    Vec u = Vec::Zero(3);
    if (c != 0.0) {
      const Vec nu = neutral_fixed_vector(g);
      Vec noise = rng.vector(3, -0.05 * std::abs(c), 0.05 * std::abs(c));
      // Keep alpha(generator) = c exactly: remove the neutral component.
      noise -= (space.inner(noise, nu) / space.inner(nu, nu)) * nu;
      u = c * nu + noise;
    }
    gens.emplace_back(std::move(g), std::move(u));
  }
  return AffineFreeRep(space, std::move(gens));
}

DeformationFamily build_deformation_example(int n, double s,
                                            std::uint64_t seed) {
  if (n < 2) throw DegenerateInput("build_deformation_example: need n >= 2");
  const QSpace affine = QSpace::affine_model(n);
  const QSpace linear = QSpace::linear_model(n);
  const int N = affine.dim();

  // Regular boost: distinct rates on the n-1 hyperbolic planes (e_i, e_{n+i}),
  // fixing the timelike coordinate n-1.
  Mat x = Mat::Zero(N, N);
  const double base_strength = 2.5;
  for (int i = 0; i < n - 1; ++i) {
    const double rate = base_strength * (1.0 + 0.2 * i);
    x(i, n + i) = rate;
    x(n + i, i) = rate;
  }

  Rng rng(seed);
  std::vector<Isometry> gens;
  for (int i = 0; i < 2; ++i) {
    const Mat conj = random_lie(affine, rng, 0.6);
    const Isometry r = exp_isometry(affine, conj, 1.0);
    gens.push_back(r * exp_isometry(affine, x, 1.0) * r.inverse());
  }
  FreeRep base(affine, std::move(gens));

  std::vector<Mat> directions;
  for (int i = 0; i < 2; ++i) directions.push_back(random_lie(linear, rng, s));
  return DeformationFamily(std::move(base), std::move(directions));
}

}  // namespace marg
