#include "dioph/pell.hpp"

#include <stdexcept>

#include "dioph/arith.hpp"
#include "dioph/errors.hpp"

namespace dioph {

PellInstance reduce_instance(const mpz_class& a, const mpz_class& b) {
  if (!(0 < a && a < b)) throw std::invalid_argument("reduce_instance: need 0 < a < b");
  if (!as_perfect_square(a * b + 1))
    throw std::invalid_argument("reduce_instance: ab+1 is not a perfect square");
  PellInstance inst;
  inst.a = a;
  inst.b = b;
  mpz_gcd(inst.g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  inst.a_dag = a / inst.g;
  inst.b_dag = b / inst.g;
  inst.D = inst.a_dag * inst.b_dag;
  inst.N = inst.b_dag * (inst.b_dag - inst.a_dag);
  return inst;
}

FundamentalUnit fundamental_unit(const mpz_class& D) {
  if (D < 2 || mpz_perfect_square_p(D.get_mpz_t()))
    throw std::invalid_argument("fundamental_unit: D must be a nonsquare >= 2");

  // v = 1 is the least possible v, so D+1 being a square settles it. Every
  // coprime reduced double lands here (D = ab = r^2-1).
  if (auto m = as_perfect_square(D + 1)) return FundamentalUnit{*m, 1};

  // PQa: continued fraction of sqrt(D); convergents G/B. The expansion of
  // sqrt(D) is periodic with Q = 1 exactly at period ends.
  const mpz_class a0 = isqrt(D);
  mpz_class B_prev = 0, G_prev = 1;
  mpz_class P = 0, Q = 1;
  mpz_class ai = a0;
  mpz_class B = 1, G = a0;

  P = ai * Q - P;
  Q = (D - P * P) / Q;

  long period = 1;
  constexpr long kMaxIters = 100000000;
  while (Q != 1) {
    if (++period > kMaxIters) throw diagnostic_error("fundamental_unit: PQa iteration guard");
    ai = (P + a0) / Q;
    mpz_class Bn = ai * B + B_prev;
    mpz_class Gn = ai * G + G_prev;
    B_prev = B;
    G_prev = G;
    B = Bn;
    G = Gn;
    P = ai * Q - P;
    Q = (D - P * P) / Q;
  }

  // Period even: G^2 - D B^2 = 1 already. Period odd: the convergent solves
  // = -1 and the fundamental +1 solution is its square.
  if (period % 2 == 0) return FundamentalUnit{G, B};
  return FundamentalUnit{G * G + D * B * B, 2 * G * B};
}

bool same_class(const SolutionClass& s, const SolutionClass& t, const mpz_class& D,
                const mpz_class& N) {
  mpz_class p = s.X0 * t.X0 - D * s.y0 * t.y0;
  mpz_class q = s.X0 * t.y0 - t.X0 * s.y0;
  return mpz_divisible_p(p.get_mpz_t(), N.get_mpz_t()) &&
         mpz_divisible_p(q.get_mpz_t(), N.get_mpz_t());
}

std::vector<SolutionClass> fundamental_solutions(const PellInstance& inst,
                                                 const FundamentalUnit& unit) {
  const mpz_class& D = inst.D;
  const mpz_class& N = inst.N;
  if (N <= 0) throw std::invalid_argument("fundamental_solutions: N must be positive");

  std::vector<SolutionClass> classes;
  auto add_if_new = [&](const SolutionClass& cand) {
    for (const auto& c : classes)
      if (same_class(c, cand, D, N)) return;
    classes.push_back(cand);
  };

  // class-representative bound: 0 <= y <= v sqrt(N) / sqrt(2(u+1));
  // y <= y_max is exactly equivalent to 2(u+1) y^2 <= v^2 N
  const mpz_class two_u1 = 2 * (unit.u + 1);
  const mpz_class v2N = unit.v * unit.v * N;
  const mpz_class y_max = isqrt(v2N / two_u1);

  const mpz_class top = N + D * y_max * y_max;
  if (top.fits_ulong_p() && sizeof(unsigned long) == 8) {
    const std::uint64_t Nu = N.get_ui(), Du = D.get_ui(), ym = y_max.get_ui();
    for (std::uint64_t y = 0; y <= ym; ++y) {
      const std::uint64_t val = Nu + Du * y * y;
      if (!is_square_u64(val)) continue;
      const mpz_class X(static_cast<unsigned long>(isqrt_u64(val)));
      add_if_new(SolutionClass{X, mpz_class(static_cast<unsigned long>(y))});
      if (y > 0) add_if_new(SolutionClass{X, mpz_class(-mpz_class(static_cast<unsigned long>(y)))});
    }
    return classes;
  }
  for (mpz_class y = 0; y <= y_max; ++y) {
    if (auto X = as_perfect_square(N + D * y * y)) {
      add_if_new(SolutionClass{*X, y});
      if (y > 0) add_if_new(SolutionClass{*X, -y});
    }
  }
  return classes;
}

SolutionSequence::SolutionSequence(const SolutionClass& cls, const FundamentalUnit& unit,
                                   const mpz_class& D, const mpz_class& N, Direction dir)
    : X_(cls.X0), y_(cls.y0), u_(unit.u), v_(unit.v), D_(D), N_(N), dir_(dir) {
  if (X_ * X_ - D_ * y_ * y_ != N_)
    throw std::invalid_argument("SolutionSequence: representative does not solve the equation");
}

void SolutionSequence::advance() {
  mpz_class Xn, yn;
  if (dir_ == Direction::plus) {
    Xn = u_ * X_ + D_ * v_ * y_;
    yn = v_ * X_ + u_ * y_;
  } else {
    Xn = u_ * X_ - D_ * v_ * y_;
    yn = u_ * y_ - v_ * X_;
  }
  X_ = Xn;
  y_ = yn;
  if (X_ * X_ - D_ * y_ * y_ != N_)
    throw diagnostic_error("SolutionSequence: recurrence left the conic");
}

CValueStream::CValueStream(const mpz_class& a, const mpz_class& b)
    : inst_(reduce_instance(a, b)), unit_(fundamental_unit(inst_.D)) {
  classes_ = fundamental_solutions(inst_, unit_);
  for (const auto& cls : classes_) {
    // plus branch starts at the representative itself; minus branch starts
    // one step out so the representative is not enqueued twice
    seqs_.emplace_back(cls, unit_, inst_.D, inst_.N, Direction::plus);
    push_from(seqs_.size() - 1);
    seqs_.emplace_back(cls, unit_, inst_.D, inst_.N, Direction::minus);
    seqs_.back().advance();
    push_from(seqs_.size() - 1);
  }
}

void CValueStream::push_from(std::size_t seq_index) {
  heap_.push(Node{seqs_[seq_index].X(), seqs_[seq_index].y(), seq_index});
}

CValue CValueStream::next() {
  while (true) {
    if (heap_.empty()) throw diagnostic_error("CValueStream: exhausted (no solution classes)");
    Node n = heap_.top();
    heap_.pop();
    seqs_[n.seq].advance();
    push_from(n.seq);

    if (!mpz_divisible_p(n.X.get_mpz_t(), inst_.b_dag.get_mpz_t())) continue;
    mpz_class x = n.X / inst_.b_dag;
    mpz_class x2m1 = x * x - 1;
    if (!mpz_divisible_p(x2m1.get_mpz_t(), inst_.a.get_mpz_t())) continue;
    mpz_class c = x2m1 / inst_.a;
    if (c < 1 || c == inst_.a || c == inst_.b) continue;
    if (c < last_emitted_c_) throw diagnostic_error("CValueStream: merge order violated");
    if (c == last_emitted_c_) continue;  // same c reached from another class/branch
    last_emitted_c_ = c;
    mpz_class y = n.y >= 0 ? n.y : mpz_class(-n.y);
    return CValue{c, x, y};
  }
}

}  // namespace dioph
