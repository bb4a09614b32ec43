#pragma once

#include <gmpxx.h>

#include <optional>

#include "dioph/real.hpp"

namespace dioph {

/// Outcome of one inequality oracle. `holds` is the retained/eliminated
/// decision; a comparison that lands inside the rounding-safety margin is
/// treated as holding (the candidate is kept) and is not certified.
struct Verdict {
  bool holds;
  bool margin_certified;
  Real lhs;
  Real rhs;
};

/// lhs < rhs with a relative safety margin of 1e-20.
Verdict compare_margin(const Real& lhs, const Real& rhs);

/// w(a,b,d,n) = [log(2.001^2 b d) + (1/n) log(1.994 a^{1/2} b^{-1/2})]
///              / log(1.994^2 a d)
Real w_ratio(const mpz_class& a, const mpz_class& b, const mpz_class& d, long n,
             mpfr_prec_t prec = kDefaultPrec);

/// Limit of w_ratio as n -> infinity.
Real w_ratio_limit(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                   mpfr_prec_t prec = kDefaultPrec);

/// Smallest n >= 2 with (n+1)/n < w(a,b,d,n), by upward scan. Guarded at
/// n = 10^6 (diagnostic; no real candidate comes close).
long smallest_n0(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                 mpfr_prec_t prec = kDefaultPrec);

/// v(a,d,g1,g2) = (1/g1) sqrt(1 + 1/(ad)) (sqrt((g2 ad + 1)/(ad + 1)) - g1).
/// Rejects g2 <= g1^2.
Real gamma3_of(const mpz_class& a, const mpz_class& d, const Real& gamma1, const Real& gamma2,
               mpfr_prec_t prec = kDefaultPrec);

/// The b >= 2a gap filter:
///   K a^{1/2} d^{1/2} / (4b)  <  log(4.001 a^{1/2}(b-a)^{1/2} b^2 d)
///                                * log(1.299 a^{1/2} b^{1/2} (b-a)^{-1} d)
///                              / [log(4bd) * log(0.1053 a b^{-1}(b-a)^{-3} d)]
/// Throws domain_error when a log argument is <= 1 (d too small for the
/// regime).
Verdict hammond_holds(const mpz_class& a, const mpz_class& b, const mpz_class& d, const Real& K,
                      mpfr_prec_t prec = kDefaultPrec);

/// Largest d >= b^5 satisfying hammond_holds, by exponential growth then
/// bisection over the monotone tail. Absent when the inequality already
/// fails at d = b^5. Throws diagnostic_error if it never fails below the
/// ceiling.
std::optional<mpz_class> d_max_hammond(const mpz_class& a, const mpz_class& b, const Real& K,
                                       mpfr_prec_t prec = kDefaultPrec);

/// The b < 2a gap filter:
///   a^{-1/2} d^{1/8} / 4  <  log(4.001 a b^2 d) * log(1.299 a^{1/2} b^{1/2} (b-a)^{-1} d)
///                          / [log(4bd) * log(0.1053 d b^{-1} (b-a)^{-2})]
Verdict lara_holds(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                   mpfr_prec_t prec = kDefaultPrec);

/// Same right side as lara_holds with lhs = gamma3 a^{1/2} b^{-1} d^{1/2} / 4.
Verdict russell_holds(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                      const Real& gamma3, mpfr_prec_t prec = kDefaultPrec);

enum class ThresholdKind { pollock, turner, steve_mark };

/// Single-point evaluation of one of the b-threshold inequalities at d = b^5
/// (for steve_mark, the right side is the max of the two branch bounds).
Verdict threshold_inequality(ThresholdKind kind, const mpz_class& b,
                             const std::optional<Real>& alpha = std::nullopt,
                             mpfr_prec_t prec = kDefaultPrec);

/// Largest integer b for which the named inequality holds (for steve_mark,
/// for which the max of the two right sides exceeds b^{1/8}); found by
/// exponential bracketing plus bisection, with monotone failure sampled at
/// ten points beyond the boundary. alpha is required for steve_mark.
mpz_class threshold_b(ThresholdKind kind, const std::optional<Real>& alpha = std::nullopt,
                      mpfr_prec_t prec = kDefaultPrec);

struct AlphaResult {
  Real alpha;
  mpz_class bound;
};

/// Grid search of alpha in [1/2, 1) minimizing threshold_b(steve_mark, alpha).
AlphaResult optimize_alpha(const Real& grid_step, mpfr_prec_t prec = kDefaultPrec);

/// The per-candidate bundle computed by the pruning pass. When
/// lemma_applicable is false (b/a <= gamma1^2, so gamma2 collapses to
/// gamma1^2) gamma3 has no valid positive value and is left at zero.
struct GammaParams {
  long n0;
  Real gamma1;
  Real gamma2;
  Real gamma3;
  bool lemma_applicable;
};

GammaParams compute_gamma_params(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                                 mpfr_prec_t prec = kDefaultPrec);

}  // namespace dioph
