#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <string_view>

#include "dioph/errors.hpp"

namespace dioph {

// Working precision for all inequality evaluation. Doubling it must not
// change any certified verdict (see bounds tests).
inline constexpr mpfr_prec_t kDefaultPrec = 160;

/// Value-semantic wrapper around mpfr_t. Every value carries its own
/// precision; binary operations produce results at the wider precision of
/// the two operands. Rounding is always to nearest.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = kDefaultPrec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Real(const Real& o) { mpfr_init2(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(v_, o.prec()); mpfr_swap(v_, o.v_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  /// Parses a decimal literal ("0.178", "1e-20"). The parse is exact up to
  /// one rounding at `prec` bits, so spec constants do not pick up a binary
  /// double conversion error on the way in.
  static Real dec(std::string_view s, mpfr_prec_t prec = kDefaultPrec) {
    Real r(prec);
    if (mpfr_set_str(r.v_, std::string(s).c_str(), 10, MPFR_RNDN) != 0 && mpfr_nan_p(r.v_))
      throw std::invalid_argument("Real::dec: bad literal: " + std::string(s));
    return r;
  }
  static Real of(const mpz_class& z, mpfr_prec_t prec = kDefaultPrec) {
    Real r(prec);
    mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  static Real of(long n, mpfr_prec_t prec = kDefaultPrec) {
    Real r(prec);
    mpfr_set_si(r.v_, n, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
  bool operator<(const Real& o) const { return cmp(o) < 0; }
  bool operator<=(const Real& o) const { return cmp(o) <= 0; }
  bool operator>(const Real& o) const { return cmp(o) > 0; }
  bool operator>=(const Real& o) const { return cmp(o) >= 0; }

  friend Real operator+(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator-(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator/(const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  Real operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real log() const {
    if (sign() <= 0) throw std::domain_error("Real::log: nonpositive argument");
    Real r(prec());
    mpfr_log(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real sqrt() const {
    if (sign() < 0) throw std::domain_error("Real::sqrt: negative argument");
    Real r(prec());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    return r;
  }
  Real abs() const {
    Real r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
  }
  /// x^(1/k) for integer k >= 1.
  Real root(unsigned long k) const {
    Real r(prec());
    mpfr_rootn_ui(r.v_, v_, k, MPFR_RNDN);
    return r;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  std::string str(int digits = 10) const {
    char* s = nullptr;
    if (mpfr_asprintf(&s, "%.*Rg", digits, v_) < 0) return "?";
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

 private:
  mpfr_t v_;
};

inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }

}  // namespace dioph
