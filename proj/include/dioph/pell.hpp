#pragma once

#include <gmpxx.h>

#include <queue>
#include <utility>
#include <vector>

namespace dioph {

/// The reduced form of b x^2 - a y^2 = b - a for a double {a,b}:
/// with g = gcd(a,b), a_dag = a/g, b_dag = b/g, the substitution
/// X = b_dag x turns it into X^2 - D y^2 = N where D = a_dag*b_dag and
/// N = b_dag*(b_dag - a_dag). D is never a square for a genuine double.
struct PellInstance {
  mpz_class a, b, g, a_dag, b_dag, D, N;
};

PellInstance reduce_instance(const mpz_class& a, const mpz_class& b);

/// Minimal positive solution of u^2 - D v^2 = 1.
struct FundamentalUnit {
  mpz_class u, v;
};

/// Continued-fraction (PQa) expansion of sqrt(D). Rejects square D.
FundamentalUnit fundamental_unit(const mpz_class& D);

/// Representative of one equivalence class of X^2 - D y^2 = N under
/// multiplication by units. X0 > 0; y0 < 0 encodes the conjugate branch.
struct SolutionClass {
  mpz_class X0, y0;
};

/// Nagell's class-equivalence test: (X1,y1) ~ (X2,y2) iff N divides both
/// X1*X2 - D*y1*y2 and X1*y2 - X2*y1.
bool same_class(const SolutionClass& s, const SolutionClass& t, const mpz_class& D,
                const mpz_class& N);

/// One representative per equivalence class, found by scanning
/// 0 <= y <= v*sqrt(N)/sqrt(2(u+1)) and testing N + D y^2 for squareness.
/// Both conjugates (X,y), (X,-y) are kept when inequivalent.
std::vector<SolutionClass> fundamental_solutions(const PellInstance& inst,
                                                 const FundamentalUnit& unit);

enum class Direction { plus, minus };

/// Walks one branch of a solution class:
///   plus:  (X,y) -> (uX + Dvy, vX + uy)
///   minus: (X,y) -> (uX - Dvy, uy - vX)
/// starting at the class representative. Every element satisfies
/// X^2 - D y^2 = N, re-checked exactly at each step.
class SolutionSequence {
 public:
  SolutionSequence(const SolutionClass& cls, const FundamentalUnit& unit, const mpz_class& D,
                   const mpz_class& N, Direction dir);

  const mpz_class& X() const { return X_; }
  const mpz_class& y() const { return y_; }
  void advance();

 private:
  mpz_class X_, y_, u_, v_, D_, N_;
  Direction dir_;
};

/// An admissible extension value of a double, together with the Pell
/// witnesses: a*c+1 = x^2 and b*c+1 = y^2.
struct CValue {
  mpz_class c, x, y;
};

/// Strictly increasing stream of all c > 0 such that {a,b,c} is a triple,
/// merged over every solution class and both branches. Divisibility filters
/// (b_dag | X, a | x^2-1) run before emission; duplicates collapse at the
/// merge; c = 0 and c in {a,b} are dropped.
class CValueStream {
 public:
  CValueStream(const mpz_class& a, const mpz_class& b);

  CValue next();

  const PellInstance& instance() const { return inst_; }
  const FundamentalUnit& unit() const { return unit_; }
  const std::vector<SolutionClass>& classes() const { return classes_; }

 private:
  struct Node {
    mpz_class X, y;
    std::size_t seq;
  };
  struct NodeCmp {
    bool operator()(const Node& l, const Node& r) const { return l.X > r.X; }
  };

  void push_from(std::size_t seq_index);

  PellInstance inst_;
  FundamentalUnit unit_;
  std::vector<SolutionClass> classes_;
  std::vector<SolutionSequence> seqs_;
  std::priority_queue<Node, std::vector<Node>, NodeCmp> heap_;
  mpz_class last_emitted_c_ = -1;
};

}  // namespace dioph
