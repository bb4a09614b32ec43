#include "dioph/bounds.hpp"

#include <stdexcept>

#include "dioph/arith.hpp"

namespace dioph {
namespace {

Real dec(const char* s, mpfr_prec_t prec) { return Real::dec(s, prec); }

/// log of a positive quantity, rejecting arguments <= 1: every log factor
/// in the gap inequalities must stay positive for the bound to mean
/// anything.
Real log_gt1(const Real& arg, const char* what) {
  if (arg <= Real::of(1L, arg.prec()))
    throw std::domain_error(std::string("nonpositive log argument in ") + what);
  return arg.log();
}

struct LaraParts {
  Real num;  // product of the two numerator logs
  Real den;  // product of the two denominator logs
};

// shared right side of the lara/russell inequalities
LaraParts lara_rhs_parts(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                         mpfr_prec_t prec) {
  const Real A = Real::of(a, prec), B = Real::of(b, prec), Dv = Real::of(d, prec);
  const Real bma = Real::of(mpz_class(b - a), prec);
  const Real n1 = log_gt1(dec("4.001", prec) * A * B * B * Dv, "lara numerator 1");
  const Real n2 = log_gt1(dec("1.299", prec) * (A * B).sqrt() / bma * Dv, "lara numerator 2");
  const Real d1 = log_gt1(Real::of(4L, prec) * B * Dv, "lara denominator 1");
  const Real d2 = log_gt1(dec("0.1053", prec) * Dv / B / (bma * bma), "lara denominator 2");
  return {n1 * n2, d1 * d2};
}

void require_lara_regime(const mpz_class& a, const mpz_class& b, const mpz_class& d) {
  if (!(0 < a && a < b && b < 2 * a)) throw std::invalid_argument("need 0 < a < b < 2a");
  if (b - a < 3) throw std::invalid_argument("need b - a >= 3");
  if (d <= b) throw std::invalid_argument("need d > b");
}

mpz_class pow5(const mpz_class& b) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), 5);
  return r;
}

}  // namespace

Verdict compare_margin(const Real& lhs, const Real& rhs) {
  const mpfr_prec_t prec = std::max(lhs.prec(), rhs.prec());
  const Real eps = Real::dec("1e-20", prec);
  const Real margin = eps * max(lhs.abs(), rhs.abs());
  const Real diff = rhs - lhs;
  if (diff > margin) return Verdict{true, true, lhs, rhs};
  if (diff < -margin) return Verdict{false, true, lhs, rhs};
  return Verdict{true, false, lhs, rhs};  // inside the margin: keep the candidate
}

Real w_ratio(const mpz_class& a, const mpz_class& b, const mpz_class& d, long n,
             mpfr_prec_t prec) {
  if (!(0 < a && a < b && b < d)) throw std::invalid_argument("w_ratio: need 0 < a < b < d");
  if (n < 1) throw std::invalid_argument("w_ratio: need n >= 1");
  const Real A = Real::of(a, prec), B = Real::of(b, prec), Dv = Real::of(d, prec);
  const Real c2001 = dec("2.001", prec), c1994 = dec("1.994", prec);
  const Real num = (c2001 * c2001 * B * Dv).log() +
                   (c1994 * (A / B).sqrt()).log() / Real::of(n, prec);
  const Real den = (c1994 * c1994 * A * Dv).log();
  return num / den;
}

Real w_ratio_limit(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                   mpfr_prec_t prec) {
  const Real A = Real::of(a, prec), B = Real::of(b, prec), Dv = Real::of(d, prec);
  const Real c2001 = dec("2.001", prec), c1994 = dec("1.994", prec);
  return (c2001 * c2001 * B * Dv).log() / (c1994 * c1994 * A * Dv).log();
}

long smallest_n0(const mpz_class& a, const mpz_class& b, const mpz_class& d, mpfr_prec_t prec) {
  if (!(0 < a && a < b && b < d)) throw std::invalid_argument("smallest_n0: need 0 < a < b < d");
  // w(n) = C1 + C2/n; the logs are computed once and the scan is pure
  // arithmetic
  const Real A = Real::of(a, prec), B = Real::of(b, prec), Dv = Real::of(d, prec);
  const Real c2001 = dec("2.001", prec), c1994 = dec("1.994", prec);
  const Real den = (c1994 * c1994 * A * Dv).log();
  const Real C1 = (c2001 * c2001 * B * Dv).log() / den;
  const Real C2 = (c1994 * (A / B).sqrt()).log() / den;
  constexpr long kCeiling = 1000000;
  for (long n = 2; n <= kCeiling; ++n) {
    const Real nn = Real::of(n, prec);
    if ((nn + Real::of(1L, prec)) / nn < C1 + C2 / nn) return n;
  }
  throw diagnostic_error("smallest_n0: no n <= 10^6 qualifies");
}

Real gamma3_of(const mpz_class& a, const mpz_class& d, const Real& gamma1, const Real& gamma2,
               mpfr_prec_t prec) {
  if (a < 1 || d < 1) throw std::invalid_argument("gamma3_of: need positive a, d");
  if (gamma2 <= gamma1 * gamma1) throw std::domain_error("gamma3_of: need gamma2 > gamma1^2");
  const Real ad = Real::of(mpz_class(a * d), prec);
  const Real one = Real::of(1L, prec);
  const Real bracket = ((gamma2 * ad + one) / (ad + one)).sqrt() - gamma1;
  return (one / gamma1) * (one + one / ad).sqrt() * bracket;
}

Verdict hammond_holds(const mpz_class& a, const mpz_class& b, const mpz_class& d, const Real& K,
                      mpfr_prec_t prec) {
  if (!(0 < a && 2 * a <= b)) throw std::invalid_argument("hammond_holds: need b >= 2a");
  if (d <= b) throw std::invalid_argument("hammond_holds: need d > b");
  const Real A = Real::of(a, prec), B = Real::of(b, prec), Dv = Real::of(d, prec);
  const Real bma = Real::of(mpz_class(b - a), prec);
  const Real lhs = Real(K) * A.sqrt() * Dv.sqrt() / (Real::of(4L, prec) * B);
  const Real n1 =
      log_gt1(dec("4.001", prec) * A.sqrt() * bma.sqrt() * B * B * Dv, "hammond numerator 1");
  const Real n2 = log_gt1(dec("1.299", prec) * (A * B).sqrt() / bma * Dv, "hammond numerator 2");
  const Real d1 = log_gt1(Real::of(4L, prec) * B * Dv, "hammond denominator 1");
  const Real d2 = log_gt1(dec("0.1053", prec) * A / B / (bma * bma * bma) * Dv,
                          "hammond denominator 2");
  return compare_margin(lhs, n1 * n2 / (d1 * d2));
}

std::optional<mpz_class> d_max_hammond(const mpz_class& a, const mpz_class& b, const Real& K,
                                       mpfr_prec_t prec) {
  const mpz_class floor_d = pow5(b);
  auto holds = [&](const mpz_class& d) { return hammond_holds(a, b, d, K, prec).holds; };
  if (!holds(floor_d)) return std::nullopt;

  // lhs grows like d^{1/2} while the right side decreases in d, so the
  // predicate has a single true->false boundary above b^5
  mpz_class lo = floor_d, hi = floor_d;
  const mpz_class ceiling = floor_d << 120;
  while (holds(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > ceiling) throw diagnostic_error("d_max_hammond: inequality never fails below ceiling");
  }
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    if (holds(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

Verdict lara_holds(const mpz_class& a, const mpz_class& b, const mpz_class& d, mpfr_prec_t prec) {
  require_lara_regime(a, b, d);
  const Real A = Real::of(a, prec), Dv = Real::of(d, prec);
  const Real lhs = Dv.root(8) / A.sqrt() / Real::of(4L, prec);
  const LaraParts parts = lara_rhs_parts(a, b, d, prec);
  return compare_margin(lhs, parts.num / parts.den);
}

Verdict russell_holds(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                      const Real& gamma3, mpfr_prec_t prec) {
  require_lara_regime(a, b, d);
  const Real A = Real::of(a, prec), B = Real::of(b, prec), Dv = Real::of(d, prec);
  const Real lhs = Real(gamma3) * A.sqrt() / B * Dv.sqrt() / Real::of(4L, prec);
  const LaraParts parts = lara_rhs_parts(a, b, d, prec);
  return compare_margin(lhs, parts.num / parts.den);
}

namespace {

// b-threshold predicates, each at d = b^5.
//
// pollock (b >= 2a, worst case over a):
//   b^{3/2} < (4/0.178) log(2.0005 b^8) log(1.8371 b^5) / [log(4b^6) log(0.1053 b)]
Verdict pollock_verdict(const mpz_class& b, mpfr_prec_t prec) {
  const Real B = Real::of(b, prec);
  const Real lhs = B * B.sqrt();
  const Real b5 = B * B * B * B * B;
  const Real b6 = b5 * B, b8 = b6 * B * B;
  const Real n1 = log_gt1(dec("2.0005", prec) * b8, "pollock numerator 1");
  const Real n2 = log_gt1(dec("1.8371", prec) * b5, "pollock numerator 2");
  const Real d1 = log_gt1(Real::of(4L, prec) * b6, "pollock denominator 1");
  const Real d2 = log_gt1(dec("0.1053", prec) * B, "pollock denominator 2");
  const Real rhs = Real::of(4L, prec) / dec("0.178", prec) * n1 * n2 / (d1 * d2);
  return compare_margin(lhs, rhs);
}

// turner (a+2 < b < 2a, worst case over a):
//   b^{1/8} < 4 log(4.001 b^8) log(0.433 b^6) / [log(4b^6) log(0.4212 b^2)]
Verdict turner_verdict(const mpz_class& b, mpfr_prec_t prec) {
  const Real B = Real::of(b, prec);
  const Real lhs = B.root(8);
  const Real b2 = B * B;
  const Real b6 = b2 * b2 * b2, b8 = b6 * b2;
  const Real n1 = log_gt1(dec("4.001", prec) * b8, "turner numerator 1");
  const Real n2 = log_gt1(dec("0.433", prec) * b6, "turner numerator 2");
  const Real d1 = log_gt1(Real::of(4L, prec) * b6, "turner denominator 1");
  const Real d2 = log_gt1(dec("0.4212", prec) * b2, "turner denominator 2");
  return compare_margin(lhs, Real::of(4L, prec) * n1 * n2 / (d1 * d2));
}

// Split on a parameter alpha in [1/2,1). For a <= alpha*b
// (so b-a >= (1-alpha)b):
//   b^{1/8} < 4 alpha^{1/2} log(4.001 alpha b^8) log(1.299 alpha^{1/2} (1-alpha)^{-1} b^5)
//             / [log(4b^6) log(0.4212 b^2)]
// and for a > alpha*b (so b-a >= 3 is all that is left):
//   b^{1/8} < 4 log(4.001 b^8) log(0.433 b^6) / [log(4b^6) log(0.1053 (1-alpha)^{-2} b^2)]
// The b survives while the max of the two right sides exceeds b^{1/8}.
Verdict steve_mark_verdict(const mpz_class& b, const Real& alpha, mpfr_prec_t prec) {
  const Real B = Real::of(b, prec);
  const Real one = Real::of(1L, prec), four = Real::of(4L, prec);
  const Real lhs = B.root(8);
  const Real b2 = B * B;
  const Real b5 = b2 * b2 * B, b6 = b5 * B, b8 = b6 * b2;
  const Real al(alpha);
  const Real om = one - al;

  const Real s_n1 = log_gt1(dec("4.001", prec) * al * b8, "steve numerator 1");
  const Real s_n2 = log_gt1(dec("1.299", prec) * al.sqrt() / om * b5, "steve numerator 2");
  const Real d1 = log_gt1(four * b6, "steve/mark denominator 1");
  const Real s_d2 = log_gt1(dec("0.4212", prec) * b2, "steve denominator 2");
  const Real steve = four * al.sqrt() * s_n1 * s_n2 / (d1 * s_d2);

  const Real m_n1 = log_gt1(dec("4.001", prec) * b8, "mark numerator 1");
  const Real m_n2 = log_gt1(dec("0.433", prec) * b6, "mark numerator 2");
  const Real m_d2 = log_gt1(dec("0.1053", prec) / (om * om) * b2, "mark denominator 2");
  const Real mark = four * m_n1 * m_n2 / (d1 * m_d2);

  return compare_margin(lhs, max(steve, mark));
}

}  // namespace

Verdict threshold_inequality(ThresholdKind kind, const mpz_class& b,
                             const std::optional<Real>& alpha, mpfr_prec_t prec) {
  if ((kind == ThresholdKind::steve_mark) != alpha.has_value())
    throw std::invalid_argument("threshold_inequality: alpha is required exactly for steve_mark");
  switch (kind) {
    case ThresholdKind::pollock: return pollock_verdict(b, prec);
    case ThresholdKind::turner: return turner_verdict(b, prec);
    case ThresholdKind::steve_mark: return steve_mark_verdict(b, *alpha, prec);
  }
  throw std::invalid_argument("threshold_inequality: unknown kind");
}

mpz_class threshold_b(ThresholdKind kind, const std::optional<Real>& alpha, mpfr_prec_t prec) {
  if ((kind == ThresholdKind::steve_mark) != alpha.has_value())
    throw std::invalid_argument("threshold_b: alpha is required exactly for steve_mark");
  auto holds = [&](const mpz_class& b) {
    return threshold_inequality(kind, b, alpha, prec).holds;
  };

  const mpz_class start = 10;  // below this some log factor can be nonpositive
  const mpz_class ceiling("1000000000000");
  if (!holds(start)) throw diagnostic_error("threshold_b: inequality fails at the start point");
  mpz_class lo = start, hi = start;
  while (holds(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > ceiling) throw diagnostic_error("threshold_b: bracketing failed below 10^12");
  }
  while (hi - lo > 1) {
    mpz_class mid = (lo + hi) / 2;
    if (holds(mid))
      lo = mid;
    else
      hi = mid;
  }
  // the monotonicity past the boundary is asserted, not proved; sample it
  mpz_class probe = lo + 1;
  for (int i = 0; i < 10; ++i) {
    if (holds(probe)) throw diagnostic_error("threshold_b: non-monotone failure past boundary");
    probe *= 2;
  }
  return lo;
}

AlphaResult optimize_alpha(const Real& grid_step, mpfr_prec_t prec) {
  const Real zero = Real::of(0L, prec), one = Real::of(1L, prec);
  const Real half = one / Real::of(2L, prec);
  if (!(grid_step > zero) || !(grid_step < one))
    throw std::invalid_argument("optimize_alpha: grid_step must lie in (0,1)");
  std::optional<AlphaResult> best;
  for (long i = 0;; ++i) {
    const Real al = half + Real::of(i, prec) * Real(grid_step);
    if (!(al < one)) break;
    mpz_class bound = threshold_b(ThresholdKind::steve_mark, al, prec);
    if (!best || bound < best->bound) best = AlphaResult{al, bound};
  }
  return *best;
}

GammaParams compute_gamma_params(const mpz_class& a, const mpz_class& b, const mpz_class& d,
                                 mpfr_prec_t prec) {
  GammaParams gp{0, Real(prec), Real(prec), Real(prec), false};
  gp.n0 = smallest_n0(a, b, d, prec);
  gp.gamma1 = w_ratio(a, b, d, gp.n0, prec);
  const Real ratio_ba = Real::of(b, prec) / Real::of(a, prec);
  const Real g1sq = gp.gamma1 * gp.gamma1;
  gp.gamma2 = max(ratio_ba, g1sq);
  gp.lemma_applicable = gp.gamma2 > g1sq;
  if (gp.lemma_applicable) gp.gamma3 = gamma3_of(a, d, gp.gamma1, gp.gamma2, prec);
  return gp;
}

}  // namespace dioph
