#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace dioph {

/// floor(sqrt(n)), computed with exact integer arithmetic. Rejects n < 0.
mpz_class isqrt(const mpz_class& n);

/// r with r*r == n when n is a perfect square, absent otherwise.
std::optional<mpz_class> as_perfect_square(const mpz_class& n);

bool is_probable_prime(const mpz_class& n);

/// Complete prime factorization; factors in increasing prime order, value 1
/// has an empty factor list.
struct Factorization {
  mpz_class value;
  std::vector<std::pair<mpz_class, unsigned>> factors;
};

Factorization factorize(const mpz_class& n);

/// Factorization of the product of two factored values.
Factorization merge_factorizations(const Factorization& x, const Factorization& y);

/// All divisors, in increasing order.
std::vector<mpz_class> divisors(const Factorization& f);

/// Divisors of r^2-1 for r >= 2, obtained by factoring r-1 and r+1
/// separately and merging.
std::vector<mpz_class> divisors_via_r(const mpz_class& r);

// 64-bit fast paths shared with the test oracles.
std::uint64_t isqrt_u64(std::uint64_t n);
bool is_square_u64(std::uint64_t n);

}  // namespace dioph
