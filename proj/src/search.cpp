#include "dioph/search.hpp"

#include <future>
#include <stdexcept>

#include "dioph/arith.hpp"
#include "dioph/errors.hpp"
#include "dioph/pell.hpp"

namespace dioph {
namespace {

mpz_class pow_ui(const mpz_class& b, int e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

// qualifying divisors of r^2-1 as (a, b) doubles with a+2 < b < 2a,
// b <= b_max, ordered by a
std::vector<DoubleRec> doubles_for_r(const mpz_class& r, const mpz_class& b_max) {
  std::vector<DoubleRec> out;
  const mpz_class w = r * r - 1;
  for (const mpz_class& a : divisors_via_r(r)) {
    if (2 * a * a <= w) continue;  // b = w/a >= 2a
    const mpz_class b = w / a;
    if (b <= a + 2 || b > b_max) continue;
    out.push_back(DoubleRec{a, b, r});
  }
  return out;
}

}  // namespace

void validate(const SearchConfig& cfg) {
  if (cfg.r_min < 2) throw std::invalid_argument("SearchConfig: r_min must be >= 2");
  if (cfg.r_max < cfg.r_min) throw std::invalid_argument("SearchConfig: r_min > r_max");
  if (cfg.b_max < 1) throw std::invalid_argument("SearchConfig: b_max must be positive");
  if (cfg.d_lo_exp >= cfg.d_hi_exp)
    throw std::invalid_argument("SearchConfig: d_lo_exp must be < d_hi_exp");
  if (cfg.d_lo_exp < 1) throw std::invalid_argument("SearchConfig: d_lo_exp must be >= 1");
}

void enumerate_doubles(const SearchConfig& cfg,
                       const std::function<void(const DoubleRec&)>& emit) {
  validate(cfg);
  for (mpz_class r = cfg.r_min; r <= cfg.r_max; ++r)
    for (const DoubleRec& d : doubles_for_r(r, cfg.b_max)) emit(d);
}

SearchCounters run_initial_list(const SearchConfig& cfg, const mpz_class& r_start,
                                const SearchHooks& hooks, mpfr_prec_t prec) {
  validate(cfg);
  SearchCounters counters;
  for (mpz_class r = std::max(cfg.r_min, r_start); r <= cfg.r_max; ++r) {
    for (const DoubleRec& dbl : doubles_for_r(r, cfg.b_max)) {
      ++counters.pairs;
      const mpz_class d_lo = pow_ui(dbl.b, cfg.d_lo_exp);
      const mpz_class d_hi = pow_ui(dbl.b, cfg.d_hi_exp);

      CValueStream stream(dbl.a, dbl.b);
      while (true) {
        const CValue cv = stream.next();
        if (cv.c <= dbl.b) continue;
        // ac+1 = x^2 and bc+1 = y^2 come with the stream element, so the
        // regular extension needs no fresh square roots
        const mpz_class d = dbl.a + dbl.b + cv.c + 2 * dbl.a * dbl.b * cv.c +
                            2 * dbl.r * cv.x * cv.y;
        if (d <= d_lo) continue;
        if (d >= d_hi) break;
        ++counters.candidates;

        bool keep;
        try {
          keep = lara_holds(dbl.a, dbl.b, d, prec).holds;
        } catch (const std::domain_error&) {
          keep = true;  // outside the inequality's regime: cannot eliminate
        }
        if (!keep) continue;
        ++counters.survivors;

        const InitialListEntry entry{dbl.a, dbl.b, cv.c, d};
        if (!is_m_tuple({entry.a, entry.b, entry.c, entry.d}) ||
            d_plus(entry.a, entry.b, entry.c) != entry.d)
          throw diagnostic_error("run_initial_list: emitted entry fails its invariants");
        if (hooks.emit) hooks.emit(entry);
      }
    }
    if (hooks.completed_r) hooks.completed_r(r, counters);
  }
  return counters;
}

std::vector<InitialListEntry> initial_list(const SearchConfig& cfg, mpfr_prec_t prec) {
  std::vector<InitialListEntry> out;
  SearchHooks hooks;
  hooks.emit = [&](const InitialListEntry& e) { out.push_back(e); };
  run_initial_list(cfg, cfg.r_min, hooks, prec);
  return out;
}

std::vector<InitialListEntry> prune(const std::vector<InitialListEntry>& entries,
                                    const std::function<void(const PruneRow&)>& report,
                                    mpfr_prec_t prec) {
  std::vector<InitialListEntry> survivors;
  for (const InitialListEntry& e : entries) {
    PruneRow row;
    row.entry = e;
    try {
      GammaParams gp = compute_gamma_params(e.a, e.b, e.d, prec);
      row.gamma = gp;
      if (!gp.lemma_applicable) {
        // gamma2 = gamma1^2 admits no positive gamma3, so the filter cannot
        // eliminate; keep the entry and flag it
        row.retained = true;
        row.note = "lemma_na";
      } else {
        Verdict v = russell_holds(e.a, e.b, e.d, gp.gamma3, prec);
        row.russell = v;
        row.retained = v.holds;
        row.note = v.holds ? "retained" : "eliminated";
      }
    } catch (const std::exception& ex) {
      row.retained = true;
      row.note = std::string("diagnostic: ") + ex.what();
    }
    if (row.retained) survivors.push_back(e);
    if (report) report(row);
  }
  return survivors;
}

CaseOneReport case_b_ge_2a(mpfr_prec_t prec) {
  CaseOneReport rep;
  const Real K178 = Real::dec("0.178", prec);
  const Real K45 = Real::dec("0.45", prec);

  // stage 1: doubles with 1 <= a <= b/2 <= 25 that are not discards and
  // survive the gap inequality at the d > b^5 boundary
  for (mpz_class a = 1; a <= 25; ++a) {
    for (mpz_class b = 2 * a; b <= 50; ++b) {
      auto dbl = as_double(a, b);
      if (!dbl) continue;
      if (is_discard_pair(a, b)) continue;
      const mpz_class b5 = pow_ui(b, 5);
      if (!hammond_holds(a, b, b5, K178, prec).holds) continue;
      rep.doubles.push_back(
          CaseOneReport::StageOne{DoubleRec{dbl->a, dbl->b, dbl->r}, d_max_hammond(a, b, K178, prec)});
    }
  }
  std::sort(rep.doubles.begin(), rep.doubles.end(),
            [](const CaseOneReport::StageOne& l, const CaseOneReport::StageOne& r) {
              return l.dbl.a != r.dbl.a ? l.dbl.a < r.dbl.a : l.dbl.b < r.dbl.b;
            });

  // stage 2: for each double, triples {a,b,d} with b^5 < d <= d_max, then
  // quadruple completions c in (b, d) with cd+1 square
  for (const auto& s1 : rep.doubles) {
    if (!s1.d_max) continue;
    const mpz_class& a = s1.dbl.a;
    const mpz_class& b = s1.dbl.b;
    const mpz_class b5 = pow_ui(b, 5);

    std::vector<mpz_class> ds;
    CValueStream dstream(a, b);
    while (true) {
      const mpz_class d = dstream.next().c;
      if (d > *s1.d_max) break;
      if (d > b5) ds.push_back(d);
    }
    for (const mpz_class& d : ds) {
      CValueStream cstream(a, b);
      while (true) {
        const mpz_class c = cstream.next().c;
        if (c >= d) break;
        if (c <= b) continue;
        if (as_perfect_square(c * d + 1)) rep.quadruples.push_back({a, b, c, d});
      }
    }
  }

  // stage 3: the sharpened constant applies when a = 1
  for (const InitialListEntry& q : rep.quadruples) {
    if (q.a == 1 && !hammond_holds(q.a, q.b, q.d, K45, prec).holds) continue;
    rep.final_set.push_back(q);
  }
  return rep;
}

std::vector<Shard> make_shards(const SearchConfig& cfg, unsigned k) {
  validate(cfg);
  if (k < 1) throw std::invalid_argument("make_shards: k must be >= 1");
  const mpz_class span = cfg.r_max - cfg.r_min + 1;
  std::vector<Shard> shards;
  mpz_class lo = cfg.r_min;
  for (unsigned i = 0; i < k && lo <= cfg.r_max; ++i) {
    mpz_class size = span / k + (mpz_class(i) < span % k ? 1 : 0);
    if (size == 0) continue;
    Shard s;
    s.r_lo = lo;
    s.r_hi = lo + size - 1;
    shards.push_back(s);
    lo = s.r_hi + 1;
  }
  return shards;
}

std::vector<InitialListEntry> shard_and_merge(const SearchConfig& cfg, unsigned k,
                                              mpfr_prec_t prec) {
  const std::vector<Shard> shards = make_shards(cfg, k);
  std::vector<std::future<std::vector<InitialListEntry>>> futures;
  for (const Shard& s : shards) {
    SearchConfig sub = cfg;
    sub.r_min = s.r_lo;
    sub.r_max = s.r_hi;
    futures.push_back(
        std::async(std::launch::async, [sub, prec] { return initial_list(sub, prec); }));
  }
  std::vector<InitialListEntry> merged;
  for (auto& f : futures) {
    std::vector<InitialListEntry> part = f.get();
    merged.insert(merged.end(), part.begin(), part.end());
  }
  return merged;
}

}  // namespace dioph
