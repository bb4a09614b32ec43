#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace dioph {

/// A verified pair {a,b} with ab+1 = r^2.
struct Double {
  mpz_class a, b, r;
};

/// A verified triple {a,b,c} with the three square roots r,s,t.
struct Triple {
  mpz_class a, b, c, r, s, t;
};

std::optional<Double> as_double(const mpz_class& a, const mpz_class& b);
std::optional<Triple> as_triple(const mpz_class& a, const mpz_class& b, const mpz_class& c);

/// True iff every pairwise product plus one is a perfect square. Rejects
/// duplicates and nonpositive entries.
bool is_m_tuple(const std::vector<mpz_class>& values);

/// Regular extension a+b+c+2abc+2rst of a triple. Rejects non-triples.
mpz_class d_plus(const mpz_class& a, const mpz_class& b, const mpz_class& c);

enum class DiscardFamily {
  k_kplus2,        // {k, k+2}
  three_k_sq,      // {3k^2-2k, 3k^2+4k+1}
  two_m_sq,        // {2(k+1)^2-2(k+1), 2(k+1)^2+2(k+1)}
  m_sq_minus_one,  // {(k+1)^2-1, (k+1)^2+2(k+1)}
  k_4kplus4,       // {k, 4k+4}
};

const char* discard_family_name(DiscardFamily f);

struct Discard {
  DiscardFamily family;
  mpz_class k;  // witness, >= 1
};

/// Detects membership of (a,b), a<b, in one of the known discard families
/// by closed-form inversion for k plus exact re-substitution. Families are
/// checked in a fixed order; the first match wins.
std::optional<Discard> is_discard_pair(const mpz_class& a, const mpz_class& b);

enum class TripleKind { none, first, second, third };

const char* triple_kind_name(TripleKind k);

/// Classifies a verified triple A<B<C:
///   first:  C >  B^5
///   second: B >  4A and B^2 <= C <= B^5
///   third:  B > 12A and B^{5/3} < C < B^2   (compared as C^3 vs B^5)
/// All comparisons use exact integer arithmetic. Rejects non-triples.
TripleKind classify_triple(const mpz_class& A, const mpz_class& B, const mpz_class& C);

}  // namespace dioph
