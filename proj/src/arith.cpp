#include "dioph/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace dioph {
namespace {

constexpr std::uint64_t kTrialLimit = 10000;  // covers composites up to 1e8 outright

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<std::uint32_t> ps;
    std::vector<bool> sieve(kTrialLimit + 1, true);
    for (std::uint64_t i = 2; i <= kTrialLimit; ++i) {
      if (!sieve[i]) continue;
      ps.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= kTrialLimit; j += i) sieve[j] = false;
    }
    return ps;
  }();
  return primes;
}

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // deterministic Miller-Rabin base set for 64-bit inputs
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = 1, base = a % n, e = d;
    while (e) {
      if (e & 1) x = mulmod_u64(x, base, n);
      base = mulmod_u64(base, base, n);
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Brent's cycle variant of Pollard's rho; deterministic (the polynomial
// offset is stepped on failure instead of re-randomizing).
std::uint64_t rho_u64(std::uint64_t n) {
  if ((n & 1) == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t x = 2, y = 2, d = 1;
    std::uint64_t ys = y, q = 1;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    while (d == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = (mulmod_u64(y, y, n) + c) % n;
      for (std::uint64_t k = 0; k < r && d == 1; k += m) {
        ys = y;
        const std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = (mulmod_u64(y, y, n) + c) % n;
          q = mulmod_u64(q, x > y ? x - y : y - x, n);
        }
        d = gcd_u64(q, n);
      }
      r <<= 1;
    }
    if (d == n) {
      d = 1;
      do {
        ys = (mulmod_u64(ys, ys, n) + c) % n;
        d = gcd_u64(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void factor_u64(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = rho_u64(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

// mpz rho for inputs beyond 64 bits; same deterministic offset stepping.
mpz_class rho_mpz(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, d = 1, diff;
    while (true) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      diff = x > y ? x - y : y - x;
      if (diff == 0) break;  // cycle without factor; try next c
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      if (d != 1) break;
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_mpz(const mpz_class& n, std::vector<mpz_class>& out) {
  if (n == 1) return;
  if (n.fits_ulong_p()) {
    std::vector<std::uint64_t> fs;
    factor_u64(n.get_ui(), fs);
    for (auto f : fs) out.emplace_back(static_cast<unsigned long>(f));
    return;
  }
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  mpz_class d = rho_mpz(n);
  factor_mpz(d, out);
  factor_mpz(n / d, out);
}

}  // namespace

mpz_class isqrt(const mpz_class& n) {
  if (n < 0) throw std::invalid_argument("isqrt: negative input");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<mpz_class> as_perfect_square(const mpz_class& n) {
  if (n < 0) throw std::invalid_argument("as_perfect_square: negative input");
  if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  return isqrt(n);
}

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Factorization factorize(const mpz_class& n) {
  if (n < 1) throw std::invalid_argument("factorize: input must be >= 1");
  Factorization f;
  f.value = n;
  if (n == 1) return f;

  mpz_class rest = n;
  // strip small primes first; rho only sees the hard cofactor
  for (std::uint32_t p : small_primes()) {
    if (mpz_class(p) * p > rest) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e) f.factors.emplace_back(p, e);
    if (rest == 1) break;
  }
  if (rest > 1) {
    std::vector<mpz_class> hard;
    factor_mpz(rest, hard);
    std::sort(hard.begin(), hard.end());
    for (std::size_t i = 0; i < hard.size();) {
      std::size_t j = i;
      while (j < hard.size() && hard[j] == hard[i]) ++j;
      f.factors.emplace_back(hard[i], static_cast<unsigned>(j - i));
      i = j;
    }
  }
  std::sort(f.factors.begin(), f.factors.end());
  return f;
}

Factorization merge_factorizations(const Factorization& x, const Factorization& y) {
  Factorization out;
  out.value = x.value * y.value;
  std::size_t i = 0, j = 0;
  while (i < x.factors.size() || j < y.factors.size()) {
    if (j == y.factors.size() || (i < x.factors.size() && x.factors[i].first < y.factors[j].first)) {
      out.factors.push_back(x.factors[i++]);
    } else if (i == x.factors.size() || y.factors[j].first < x.factors[i].first) {
      out.factors.push_back(y.factors[j++]);
    } else {
      out.factors.emplace_back(x.factors[i].first, x.factors[i].second + y.factors[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

std::vector<mpz_class> divisors(const Factorization& f) {
  std::vector<mpz_class> out{1};
  for (const auto& [p, e] : f.factors) {
    const std::size_t n = out.size();
    mpz_class pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<mpz_class> divisors_via_r(const mpz_class& r) {
  if (r < 2) throw std::invalid_argument("divisors_via_r: r must be >= 2");
  return divisors(merge_factorizations(factorize(r - 1), factorize(r + 1)));
}

std::uint64_t isqrt_u64(std::uint64_t n) {
  if (n == 0) return 0;
  auto sq = [](std::uint64_t x) { return static_cast<unsigned __int128>(x) * x; };
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && sq(r) > n) --r;
  while (sq(r + 1) <= n) ++r;
  return r;
}

bool is_square_u64(std::uint64_t n) {
  // quadratic-residue prefilters knock out ~99% of non-squares cheaply
  static const auto q64 = [] {
    std::array<bool, 64> t{};
    for (int i = 0; i < 64; ++i) t[(i * i) & 63] = true;
    return t;
  }();
  static const auto q63 = [] {
    std::array<bool, 63> t{};
    for (int i = 0; i < 63; ++i) t[(i * i) % 63] = true;
    return t;
  }();
  static const auto q65 = [] {
    std::array<bool, 65> t{};
    for (int i = 0; i < 65; ++i) t[(i * i) % 65] = true;
    return t;
  }();
  if (!q64[n & 63]) return false;
  if (!q63[n % 63]) return false;
  if (!q65[n % 65]) return false;
  const std::uint64_t r = isqrt_u64(n);
  return r * r == n;
}

}  // namespace dioph
