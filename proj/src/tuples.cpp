#include "dioph/tuples.hpp"

#include <algorithm>
#include <stdexcept>

#include "dioph/arith.hpp"

namespace dioph {

std::optional<Double> as_double(const mpz_class& a, const mpz_class& b) {
  if (a < 1 || !(a < b)) return std::nullopt;
  auto r = as_perfect_square(a * b + 1);
  if (!r) return std::nullopt;
  return Double{a, b, *r};
}

std::optional<Triple> as_triple(const mpz_class& a, const mpz_class& b, const mpz_class& c) {
  if (a < 1 || !(a < b && b < c)) return std::nullopt;
  auto r = as_perfect_square(a * b + 1);
  auto s = as_perfect_square(a * c + 1);
  auto t = as_perfect_square(b * c + 1);
  if (!r || !s || !t) return std::nullopt;
  return Triple{a, b, c, *r, *s, *t};
}

bool is_m_tuple(const std::vector<mpz_class>& values) {
  if (values.empty()) throw std::invalid_argument("is_m_tuple: empty set");
  std::vector<mpz_class> v = values;
  std::sort(v.begin(), v.end());
  if (v.front() < 1) throw std::invalid_argument("is_m_tuple: entries must be positive");
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw std::invalid_argument("is_m_tuple: duplicate entries");
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (!mpz_perfect_square_p(mpz_class(v[i] * v[j] + 1).get_mpz_t())) return false;
  return true;
}

mpz_class d_plus(const mpz_class& a, const mpz_class& b, const mpz_class& c) {
  auto r = as_perfect_square(a * b + 1);
  auto s = as_perfect_square(a * c + 1);
  auto t = as_perfect_square(b * c + 1);
  if (!r || !s || !t) throw std::invalid_argument("d_plus: {a,b,c} is not a triple");
  return a + b + c + 2 * a * b * c + 2 * (*r) * (*s) * (*t);
}

const char* discard_family_name(DiscardFamily f) {
  switch (f) {
    case DiscardFamily::k_kplus2: return "{k,k+2}";
    case DiscardFamily::three_k_sq: return "{3k^2-2k,3k^2+4k+1}";
    case DiscardFamily::two_m_sq: return "{2(k+1)^2-2(k+1),2(k+1)^2+2(k+1)}";
    case DiscardFamily::m_sq_minus_one: return "{(k+1)^2-1,(k+1)^2+2(k+1)}";
    case DiscardFamily::k_4kplus4: return "{k,4k+4}";
  }
  return "?";
}

std::optional<Discard> is_discard_pair(const mpz_class& a, const mpz_class& b) {
  if (!(a < b) || a < 1) throw std::invalid_argument("is_discard_pair: need 1 <= a < b");

  if (b == a + 2) return Discard{DiscardFamily::k_kplus2, a};

  // 3k^2-2k = a  <=>  (3k-1)^2 = 3a+1
  if (auto q = as_perfect_square(3 * a + 1)) {
    mpz_class t = *q + 1;
    if (t % 3 == 0) {
      mpz_class k = t / 3;
      if (k >= 1 && 3 * k * k - 2 * k == a && b == 3 * k * k + 4 * k + 1)
        return Discard{DiscardFamily::three_k_sq, k};
    }
  }
  // 2m^2-2m = a  <=>  (2m-1)^2 = 2a+1, with m = k+1 >= 2
  if (auto q = as_perfect_square(2 * a + 1)) {
    mpz_class t = *q + 1;
    if (t % 2 == 0) {
      mpz_class m = t / 2;
      if (m >= 2 && 2 * m * m - 2 * m == a && b == 2 * m * m + 2 * m)
        return Discard{DiscardFamily::two_m_sq, m - 1};
    }
  }
  // m^2-1 = a, with m = k+1 >= 2
  if (auto m = as_perfect_square(a + 1)) {
    if (*m >= 2 && b == (*m) * (*m) + 2 * (*m))
      return Discard{DiscardFamily::m_sq_minus_one, *m - 1};
  }
  if (b == 4 * a + 4) return Discard{DiscardFamily::k_4kplus4, a};

  return std::nullopt;
}

const char* triple_kind_name(TripleKind k) {
  switch (k) {
    case TripleKind::none: return "none";
    case TripleKind::first: return "first";
    case TripleKind::second: return "second";
    case TripleKind::third: return "third";
  }
  return "?";
}

TripleKind classify_triple(const mpz_class& A, const mpz_class& B, const mpz_class& C) {
  if (!as_triple(A, B, C)) throw std::invalid_argument("classify_triple: not a triple");
  mpz_class B2 = B * B;
  mpz_class B5;
  mpz_pow_ui(B5.get_mpz_t(), B.get_mpz_t(), 5);
  if (C > B5) return TripleKind::first;
  if (B > 4 * A && B2 <= C && C <= B5) return TripleKind::second;
  if (B > 12 * A && C < B2 && C * C * C > B5) return TripleKind::third;
  return TripleKind::none;
}

}  // namespace dioph
