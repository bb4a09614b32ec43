#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dioph/bounds.hpp"
#include "dioph/tuples.hpp"

namespace dioph {

/// Range and window bounds for the enumeration pipelines. The d window is
/// the open interval (b^d_lo_exp, b^d_hi_exp).
struct SearchConfig {
  mpz_class r_min = 2;
  mpz_class r_max;
  mpz_class b_max;
  int d_lo_exp = 5;
  int d_hi_exp = 8;
};

void validate(const SearchConfig& cfg);

struct DoubleRec {
  mpz_class a, b, r;
};

struct InitialListEntry {
  mpz_class a, b, c, d;
  bool operator==(const InitialListEntry&) const = default;
};

struct SearchCounters {
  std::uint64_t pairs = 0;       // doubles enumerated
  std::uint64_t candidates = 0;  // quadruple candidates inside the d window
  std::uint64_t survivors = 0;   // candidates passing the gap filter
};

/// Walks r over [r_min, r_max]; for each divisor a of r^2-1 with
/// b = (r^2-1)/a, emits (a,b,r) iff a+2 < b < 2a and b <= b_max.
/// Ordered by r, then a.
void enumerate_doubles(const SearchConfig& cfg, const std::function<void(const DoubleRec&)>& emit);

struct SearchHooks {
  std::function<void(const InitialListEntry&)> emit;
  /// Called after every completed r with the running counters.
  std::function<void(const mpz_class& r, const SearchCounters&)> completed_r;
};

/// Streaming core of the initial-list construction, resumable at any r.
/// For each double, walks the merged Pell c stream past c <= b, then past
/// d <= b^d_lo_exp, and emits (a,b,c,d_plus) while d < b^d_hi_exp whenever
/// the gap inequality retains it. Deterministic.
SearchCounters run_initial_list(const SearchConfig& cfg, const mpz_class& r_start,
                                const SearchHooks& hooks, mpfr_prec_t prec = kDefaultPrec);

/// Materialized initial list (small configurations and tests).
std::vector<InitialListEntry> initial_list(const SearchConfig& cfg,
                                           mpfr_prec_t prec = kDefaultPrec);

/// Pruning report for one entry.
struct PruneRow {
  InitialListEntry entry;
  std::optional<GammaParams> gamma;
  std::optional<Verdict> russell;
  bool retained = false;
  std::string note;  // "eliminated", "retained", "lemma_na", "diagnostic: ..."
};

/// Per entry: n0, gamma1 = w(n0), gamma2 = max(b/a, gamma1^2), gamma3, then
/// the russell filter; retains the entry only if the filter fails to
/// eliminate it. Entries whose gamma2 collapses to gamma1^2 (hypothesis of
/// the gamma lemma unmet) are retained and flagged. Diagnostics are
/// reported per entry without aborting the batch.
std::vector<InitialListEntry> prune(const std::vector<InitialListEntry>& entries,
                                    const std::function<void(const PruneRow&)>& report = nullptr,
                                    mpfr_prec_t prec = kDefaultPrec);

/// Full report of the b >= 2a case.
struct CaseOneReport {
  struct StageOne {
    DoubleRec dbl;
    std::optional<mpz_class> d_max;  // hammond bound at K = 0.178
  };
  std::vector<StageOne> doubles;
  std::vector<InitialListEntry> quadruples;
  std::vector<InitialListEntry> final_set;  // after the a = 1 refilter at K = 0.45
};

/// Enumerates pairs 1 <= a <= b/2 <= 25; keeps verified doubles that are
/// not discards and stay feasible at d = b^5; for each survivor bounds d,
/// collects triples {a,b,d} with b^5 < d <= bound, then quadruple
/// completions c in (b,d) with cd+1 square; finally refilters a = 1
/// entries with the sharpened constant 0.45.
CaseOneReport case_b_ge_2a(mpfr_prec_t prec = kDefaultPrec);

struct Shard {
  mpz_class r_lo, r_hi;
  enum class Status { pending, done } status = Status::pending;
  std::string output_path;
};

/// Partitions [r_min, r_max] into k contiguous shards (possibly fewer when
/// the range is shorter than k).
std::vector<Shard> make_shards(const SearchConfig& cfg, unsigned k);

/// Runs initial_list shard-by-shard on a small worker pool and merges in
/// (r, a, d) order. Bit-identical to the unsharded run for every k.
std::vector<InitialListEntry> shard_and_merge(const SearchConfig& cfg, unsigned k,
                                              mpfr_prec_t prec = kDefaultPrec);

}  // namespace dioph
