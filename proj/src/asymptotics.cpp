#include "marg/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace marg {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Converging: return "Converging";
    case Verdict::Stalled: return "Stalled";
    case Verdict::Diverging: return "Diverging";
  }
  return "?";
}

double ConvergenceReport::final_error() const {
  return errors.empty() ? std::numeric_limits<double>::quiet_NaN()
                        : errors.back();
}

ConvergenceReport finish_report(std::vector<int> indices,
                                std::vector<double> values, double target,
                                bool multiplicative,
                                std::vector<std::string> skipped,
                                double final_error_bound) {
  ConvergenceReport r;
  r.indices = std::move(indices);
  r.values = std::move(values);
  r.target = target;
  r.skipped = std::move(skipped);
  r.final_error_bound = final_error_bound;
  r.errors.reserve(r.values.size());
  for (double v : r.values)
    r.errors.push_back(multiplicative ? std::abs(v / target - 1.0)
                                      : std::abs(v - target));
  // Least-squares slope of log(error) against index, over positive errors.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (size_t i = 0; i < r.errors.size(); ++i) {
    const double e = std::max(r.errors[i], 1e-300);
    const double x = static_cast<double>(r.indices[i]);
    const double y = std::log(e);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++m;
  }
  if (m >= 2 && sxx * m - sx * sx > 0)
    r.fitted_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const bool small_final = !r.errors.empty() && r.errors.back() < final_error_bound;
  if (r.fitted_slope < -0.1 && small_final)
    r.verdict = Verdict::Converging;
  else if (r.fitted_slope > 0.1)
    r.verdict = Verdict::Diverging;
  else
    r.verdict = Verdict::Stalled;
  return r;
}

namespace {

// Neville extrapolation to h = 0 of samples (h_i^2, d_i).
double richardson_extrapolate(const std::vector<double>& h,
                              const std::vector<double>& d) {
  const int m = static_cast<int>(h.size());
  std::vector<double> tab = d;
  std::vector<double> x(m);
  for (int i = 0; i < m; ++i) x[i] = h[i] * h[i];
  for (int level = 1; level < m; ++level)
    for (int i = 0; i < m - level; ++i)
      tab[i] = tab[i + 1] + (tab[i + 1] - tab[i]) * x[i + level] /
                                (x[i] - x[i + level]);
  return tab[0];
}

}  // namespace

DerivativeReport deriv_check(const DeformationFamily& fam, const Word& w,
                             const std::vector<double>& h_schedule,
                             double gap_tol) {
  if (h_schedule.empty())
    throw DegenerateInput("deriv_check: empty step schedule");
  std::vector<double> h = h_schedule;
  std::sort(h.begin(), h.end(), std::greater<double>());

  const auto lambda_at = [&](double t) {
    return lambda_tracked(fam.at(t).evaluate(w), gap_tol);
  };

  DerivativeReport rep;
  rep.h_schedule = h;
  try {
    rep.lambda_at_zero = lambda_at(0.0);
    std::vector<double> log_diffs;
    for (double step : h) {
      const double lp = lambda_at(step);
      const double lm = lambda_at(-step);
      rep.central_diff.push_back((lp - lm) / (2.0 * step));
      log_diffs.push_back((std::log(lp * lp) - std::log(lm * lm)) /
                          (4.0 * step));
    }
    rep.richardson = richardson_extrapolate(h, rep.central_diff);
    rep.log_form_derivative = richardson_extrapolate(h, log_diffs);
  } catch (const NotProximal& e) {
    throw StepTooLarge(std::string("deriv_check: proximality lost inside the "
                                   "step schedule: ") + e.what());
  } catch (const ComplexMidEigenvalues& e) {
    throw StepTooLarge(std::string("deriv_check: mid pair left the real line "
                                   "inside the step schedule: ") + e.what());
  }

  rep.alpha = margulis_alpha(fam.affine().evaluate(w), gap_tol);
  rep.mismatch = std::abs(rep.richardson + rep.alpha);
  rep.target_agreement = std::abs(rep.richardson - rep.log_form_derivative);

  // Observed order from the two largest steps, measured against the
  // extrapolated value.
  if (h.size() >= 2) {
    const double e0 = std::abs(rep.central_diff[0] - rep.richardson);
    const double e1 = std::abs(rep.central_diff[1] - rep.richardson);
    if (e0 > 0 && e1 > 0)
      rep.observed_order = std::log(e0 / e1) / std::log(h[0] / h[1]);
  }
  return rep;
}

namespace {

void check_distinct_fixed_planes(const Subspace& g_att, const Subspace& g_rep,
                                 const Subspace& e_att, const Subspace& e_rep) {
  const Subspace* planes[4] = {&g_att, &g_rep, &e_att, &e_rep};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (same_plane(*planes[i], *planes[j], 1e-7))
        throw NotTransverse("limit check: fixed planes are not distinct");
}

struct AffineLimitData {
  AffineNullPlane gamma_minus, gamma_plus, eta_minus, eta_plus;
};

AffineLimitData affine_limit_planes(const AffineFreeRep& rep, const Word& gamma,
                                    const Word& eta, double gap_tol) {
  const AffineIsometry g = rep.evaluate(gamma);
  const AffineIsometry e = rep.evaluate(eta);
  auto [g_minus, g_plus] = invariant_affine_null_planes(g, gap_tol);
  auto [e_minus, e_plus] = invariant_affine_null_planes(e, gap_tol);
  check_distinct_fixed_planes(
      g_plus.direction().isotropic_core(), g_minus.direction().isotropic_core(),
      e_plus.direction().isotropic_core(), e_minus.direction().isotropic_core());
  return {std::move(g_minus), std::move(g_plus), std::move(e_minus),
          std::move(e_plus)};
}

template <typename ValueFn>
ConvergenceReport run_sequence(int n_max, double target, bool multiplicative,
                               double final_error_bound, ValueFn&& value_fn) {
  std::vector<int> indices;
  std::vector<double> values;
  std::vector<std::string> skipped;
  for (int i = 1; i <= n_max; ++i) {
    try {
      values.push_back(value_fn(i));
      indices.push_back(i);
    } catch (const Error& e) {
      skipped.push_back("index " + std::to_string(i) + ": " + e.what());
      break;  // sequence truncated, failure recorded
    }
  }
  return finish_report(std::move(indices), std::move(values), target,
                       multiplicative, std::move(skipped), final_error_bound);
}

}  // namespace

ConvergenceReport alpha_limit_fixed_k(const AffineFreeRep& rep,
                                      const Word& gamma, const Word& eta,
                                      int k, int n_max,
                                      double final_error_bound,
                                      double gap_tol) {
  AffineLimitData d = affine_limit_planes(rep, gamma, eta, gap_tol);
  const AffineIsometry eta_k = rep.evaluate(eta.power(k));
  const AffineIsometry eta_mk = rep.evaluate(eta.power(-k));
  const double target =
      0.5 * (beta(d.eta_minus, d.gamma_minus, d.gamma_plus,
                  d.gamma_plus.transformed(eta_k)) +
             beta(d.eta_plus, d.gamma_plus, d.gamma_minus,
                  d.gamma_minus.transformed(eta_mk)));
  const double alpha_eta_k = margulis_alpha(rep.evaluate(eta.power(k)), gap_tol);
  const double alpha_gamma = margulis_alpha(rep.evaluate(gamma), gap_tol);
  return run_sequence(n_max, target, false, final_error_bound, [&](int i) {
    const Word w = gamma.power(i) * eta.power(k);
    return margulis_alpha(rep.evaluate(w), gap_tol) - i * alpha_gamma -
           alpha_eta_k;
  });
}

ConvergenceReport alpha_limit_diag(const AffineFreeRep& rep, const Word& gamma,
                                   const Word& eta, int n_max,
                                   double final_error_bound, double gap_tol) {
  AffineLimitData d = affine_limit_planes(rep, gamma, eta, gap_tol);
  const double target =
      beta(d.eta_minus, d.gamma_minus, d.gamma_plus, d.eta_plus);
  const double alpha_gamma = margulis_alpha(rep.evaluate(gamma), gap_tol);
  const double alpha_eta = margulis_alpha(rep.evaluate(eta), gap_tol);
  return run_sequence(n_max, target, false, final_error_bound, [&](int i) {
    const Word w = gamma.power(i) * eta.power(i);
    return margulis_alpha(rep.evaluate(w), gap_tol) - i * alpha_gamma -
           i * alpha_eta;
  });
}

namespace {

struct LinearLimitData {
  Subspace gamma_minus, gamma_plus, eta_minus, eta_plus;
};

LinearLimitData linear_limit_planes(const FreeRep& rep, const Word& gamma,
                                    const Word& eta, double gap_tol) {
  ProximalData pg = proximal_data(rep.evaluate(gamma), gap_tol);
  ProximalData pe = proximal_data(rep.evaluate(eta), gap_tol);
  check_distinct_fixed_planes(pg.a_att, pg.a_rep, pe.a_att, pe.a_rep);
  return {std::move(pg.a_rep), std::move(pg.a_att), std::move(pe.a_rep),
          std::move(pe.a_att)};
}

}  // namespace

ConvergenceReport theta_limit_fixed_k(const FreeRep& rep, const Word& gamma,
                                      const Word& eta, int k, int n_max,
                                      double final_error_bound,
                                      double gap_tol) {
  LinearLimitData d = linear_limit_planes(rep, gamma, eta, gap_tol);
  const Isometry eta_k = rep.evaluate(eta.power(k));
  const Isometry eta_mk = rep.evaluate(eta.power(-k));
  const double target =
      theta(d.eta_minus, d.gamma_minus, d.gamma_plus,
            transform(eta_k, d.gamma_plus)) *
      theta(d.eta_plus, d.gamma_plus, d.gamma_minus,
            transform(eta_mk, d.gamma_minus));
  const double l_eta_k = lambda_labeled(rep.evaluate(eta.power(k)), gap_tol);
  const double l_gamma = lambda_labeled(rep.evaluate(gamma), gap_tol);
  return run_sequence(n_max, target, true, final_error_bound, [&](int i) {
    const Word w = gamma.power(i) * eta.power(k);
    const double l = lambda_labeled(rep.evaluate(w), gap_tol);
    const double li_gamma = std::pow(l_gamma, i);
    return (l * l) / (li_gamma * li_gamma * l_eta_k * l_eta_k);
  });
}

ConvergenceReport theta_limit_diag(const FreeRep& rep, const Word& gamma,
                                   const Word& eta, int n_max,
                                   double final_error_bound, double gap_tol) {
  LinearLimitData d = linear_limit_planes(rep, gamma, eta, gap_tol);
  const double th =
      theta(d.eta_minus, d.gamma_minus, d.gamma_plus, d.eta_plus);
  const double target = th * th;
  const double l_gamma = lambda_labeled(rep.evaluate(gamma), gap_tol);
  const double l_eta = lambda_labeled(rep.evaluate(eta), gap_tol);
  return run_sequence(n_max, target, true, final_error_bound, [&](int i) {
    const Word w = gamma.power(i) * eta.power(i);
    const double l = lambda_labeled(rep.evaluate(w), gap_tol);
    const double denom = std::pow(l_gamma, i) * std::pow(l_eta, i);
    return (l * l) / (denom * denom);
  });
}

OrbitRates orbit_rates(const FreeRep& rep, const Word& w, double gap_tol) {
  if (w.empty()) throw NotProximal("orbit_rates: empty word");
  OrbitRates r;
  r.word_length = w.length();
  const double l = lambda_labeled(rep.evaluate(w), gap_tol);
  r.log_lambda = std::log(l);
  r.log_lambda_normalized = *r.log_lambda / w.length();
  return r;
}

OrbitRates orbit_rates(const AffineFreeRep& rep, const Word& w,
                       double gap_tol) {
  if (w.empty()) throw NotProximal("orbit_rates: empty word");
  OrbitRates r;
  r.word_length = w.length();
  r.alpha = margulis_alpha(rep.evaluate(w), gap_tol);
  r.alpha_normalized = *r.alpha / w.length();
  return r;
}

}  // namespace marg
