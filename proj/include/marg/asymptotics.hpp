#pragma once

#include <optional>
#include <string>
#include <vector>

#include "marg/groups.hpp"
#include "marg/invariants.hpp"

namespace marg {

enum class Verdict { Converging, Stalled, Diverging };

const char* verdict_name(Verdict v);

struct ConvergenceReport {
  std::vector<int> indices;
  std::vector<double> values;
  double target = 0.0;
  std::vector<double> errors;
  double fitted_slope = 0.0;  // least-squares slope of log(error) vs index
  Verdict verdict = Verdict::Stalled;
  double final_error_bound = 1e-3;  // the bound the verdict used
  std::vector<std::string> skipped;  // per-index failures, never dropped silently

  double final_error() const;
};

// Builds errors/slope/verdict from values against the target.
ConvergenceReport finish_report(std::vector<int> indices,
                                std::vector<double> values, double target,
                                bool multiplicative,
                                std::vector<std::string> skipped,
                                double final_error_bound);

struct DerivativeReport {
  std::vector<double> h_schedule;
  std::vector<double> central_diff;      // central differences of lambda_t
  double richardson = 0.0;               // extrapolated d lambda / dt at 0
  double alpha = 0.0;                    // Margulis invariant of the word
  double mismatch = 0.0;                 // |richardson + alpha|
  double log_form_derivative = 0.0;      // (1/2) d/dt log lambda_t^2
  double target_agreement = 0.0;         // |richardson - log_form_derivative|
  double observed_order = 0.0;           // from the two largest steps
  double lambda_at_zero = 1.0;
};

// Central differences of the tracked mid eigenvalue across h_schedule with
// Richardson extrapolation, compared against -alpha.
DerivativeReport deriv_check(const DeformationFamily& fam, const Word& w,
                             const std::vector<double>& h_schedule,
                             double gap_tol = 1e-6);

// alpha(gamma^i eta^k) - alpha(gamma^i) - alpha(eta^k) against the two-term
// affine cross-ratio limit.
ConvergenceReport alpha_limit_fixed_k(const AffineFreeRep& rep,
                                      const Word& gamma, const Word& eta,
                                      int k, int n_max,
                                      double final_error_bound = 1e-3,
                                      double gap_tol = 1e-6);

// alpha(gamma^i eta^i) - alpha(gamma^i) - alpha(eta^i) against
// beta(eta^-, gamma^-, gamma^+, eta^+).
ConvergenceReport alpha_limit_diag(const AffineFreeRep& rep, const Word& gamma,
                                   const Word& eta, int n_max,
                                   double final_error_bound = 1e-3,
                                   double gap_tol = 1e-6);

// lambda(gamma^i eta^k)^2 / (lambda(gamma^i)^2 lambda(eta^k)^2) against the
// product of the two cross-ratios; multiplicative errors.
ConvergenceReport theta_limit_fixed_k(const FreeRep& rep, const Word& gamma,
                                      const Word& eta, int k, int n_max,
                                      double final_error_bound = 1e-3,
                                      double gap_tol = 1e-6);

// The diagonal version against theta(eta^-, gamma^-, gamma^+, eta^+)^2.
ConvergenceReport theta_limit_diag(const FreeRep& rep, const Word& gamma,
                                   const Word& eta, int n_max,
                                   double final_error_bound = 1e-3,
                                   double gap_tol = 1e-6);

struct OrbitRates {
  int word_length = 0;
  std::optional<double> log_lambda;
  std::optional<double> alpha;
  std::optional<double> log_lambda_normalized;  // by reduced word length
  std::optional<double> alpha_normalized;
};

OrbitRates orbit_rates(const FreeRep& rep, const Word& w, double gap_tol = 1e-6);
OrbitRates orbit_rates(const AffineFreeRep& rep, const Word& w,
                       double gap_tol = 1e-6);

}  // namespace marg
