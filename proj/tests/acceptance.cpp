// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Expects the CLI binary path in DIOPH_BIN (criteria 1 and
// 8 drive the real executable).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "dioph/arith.hpp"
#include "dioph/bounds.hpp"
#include "dioph/pell.hpp"
#include "dioph/records.hpp"
#include "dioph/search.hpp"
#include "dioph/tuples.hpp"
#include "oracles.hpp"
#include "unit_power.hpp"

namespace fs = std::filesystem;
using namespace dioph;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void note(const std::string& s) { g_notes.push_back("    " + s); }

void finish(int id, const std::string& title, bool pass) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << title << "\n";
  for (const auto& n : g_notes) std::cout << n << "\n";
  g_notes.clear();
  std::cout.flush();
  if (!pass) ++g_failures;
}

bool expect(bool ok, const std::string& what) {
  if (!ok) note("FAILED: " + what);
  return ok;
}

std::string cli_binary() {
  const char* p = std::getenv("DIOPH_BIN");
  if (!p) {
    std::cerr << "DIOPH_BIN not set\n";
    std::exit(2);
  }
  return p;
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path outp = dir / "stdout.txt";
  const std::string cmd =
      cli_binary() + " " + args + " > " + outp.string() + " 2> " + (dir / "stderr.txt").string();
  const int rc = std::system(cmd.c_str());
  std::ifstream in(outp);
  std::ostringstream ss;
  ss << in.rdbuf();
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, ss.str()};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

bool criterion1(const fs::path& tmp) {
  bool ok = true;
  const RunResult r = run_cli("case1", tmp);
  ok &= expect(r.exit_code == 0, "case1 exit code 0, got " + std::to_string(r.exit_code));

  const std::string& out = r.out;
  ok &= expect(out.find("surviving doubles: 5") != std::string::npos, "exactly five doubles");
  for (const char* d : {"1 15", "1 24", "1 35", "2 24", "3 21"})
    ok &= expect(out.find(std::string("  ") + d + "  d_max=") != std::string::npos,
                 std::string("double {") + d + "} present");
  ok &= expect(out.find("candidate quadruples: 3") != std::string::npos,
               "exactly three quadruples");
  ok &= expect(out.find("  1 15 32760 2030624\n") != std::string::npos,
               "quadruple (1,15,32760,2030624)");
  ok &= expect(out.find("  1 24 148995 14600040\n") != std::string::npos,
               "quadruple (1,24,148995,14600040)");
  ok &= expect(out.find("  1 35 494208 70174128\n") != std::string::npos,
               "quadruple (1,35,494208,70174128)");
  ok &= expect(out.find("final set: 0") != std::string::npos, "empty final set");
  // the text's 32760 is the verified extension; 37260 fails the square test
  ok &= expect(!as_perfect_square(mpz_class(37260) + 1).has_value(), "37261 is not a square");
  ok &= expect(is_m_tuple({1, 15, 32760, mpz_class("2030624")}), "32760 completes the quadruple");
  return ok;
}

bool criterion2() {
  bool ok = true;
  const mpz_class d("10476753");
  const GammaParams gp = compute_gamma_params(8, 15, d);
  ok &= expect(gp.n0 == 31, "n0 == 31, got " + std::to_string(gp.n0));
  ok &= expect(std::abs(gp.gamma1.to_double() - 1.0330) <= 5e-4,
               "gamma1 = 1.0330 +- 5e-4, got " + gp.gamma1.str(8));
  ok &= expect(gp.lemma_applicable, "gamma lemma applicable");
  ok &= expect(std::abs(gp.gamma3.to_double() - 0.32555) <= 1e-4,
               "gamma3 = 0.32555 +- 1e-4, got " + gp.gamma3.str(8));
  const Verdict v = russell_holds(8, 15, d, gp.gamma3);
  ok &= expect(std::abs(v.lhs.to_double() - 49.67) <= 0.05,
               "russell lhs = 49.67 +- 0.05, got " + v.lhs.str(8));
  ok &= expect(std::abs(v.rhs.to_double() - 2.852) <= 0.005,
               "russell rhs = 2.852 +- 0.005, got " + v.rhs.str(8));
  ok &= expect(!v.holds, "verdict = eliminated");
  return ok;
}

bool criterion3() {
  bool ok = true;
  const auto t0 = std::chrono::steady_clock::now();

  const mpz_class pol = threshold_b(ThresholdKind::pollock);
  note("threshold_b(pollock) = " + pol.get_str() +
       "; inequality at 50: " +
       (threshold_inequality(ThresholdKind::pollock, 50).holds ? "holds" : "fails") +
       ", at 51: " +
       (threshold_inequality(ThresholdKind::pollock, 51).holds ? "holds" : "fails"));
  ok &= expect(pol == 50, "threshold_b(pollock) == 50 exactly");
  ok &= expect(threshold_inequality(ThresholdKind::pollock, 50).holds, "pollock holds at b=50");
  ok &= expect(!threshold_inequality(ThresholdKind::pollock, 51).holds, "pollock fails at b=51");

  const mpz_class tur = threshold_b(ThresholdKind::turner);
  note("threshold_b(turner) = " + tur.get_str());
  ok &= expect(std::abs(tur.get_d() - 4.69e9) / 4.69e9 <= 0.005,
               "turner within 0.5% of 4.69e9");

  const mpz_class sm = threshold_b(ThresholdKind::steve_mark, Real::dec("0.9862"));
  note("threshold_b(steve_mark, 0.9862) = " + sm.get_str());
  ok &= expect(sm > mpz_class("1200000000") && sm <= mpz_class("1300000000"),
               "steve_mark(0.9862) in (1.2e9, 1.3e9]");

  note("runtime " + std::to_string(seconds_since(t0)) + " s");
  return ok;
}

bool criterion4() {
  bool ok = true;
  const auto m178 = d_max_hammond(1, 15, Real::dec("0.178"));
  ok &= expect(m178.has_value(), "d_max_hammond(1,15,0.178) exists");
  if (m178) {
    note("d_max_hammond(1,15,0.178) = " + m178->get_str());
    ok &= expect(std::abs(m178->get_d() - 5.2e6) / 5.2e6 <= 0.01, "within 1% of 5.2e6");
  }
  const auto m45 = d_max_hammond(1, 15, Real::dec("0.45"));
  ok &= expect(m45.has_value(), "d_max_hammond(1,15,0.45) exists");
  if (m45) {
    note("d_max_hammond(1,15,0.45) = " + m45->get_str());
    ok &= expect(*m45 < 2000000, "below 2e6");
  }
  return ok;
}

std::vector<DoubleRec> library_doubles(std::uint64_t b_max) {
  SearchConfig cfg;
  cfg.b_max = static_cast<unsigned long>(b_max);
  cfg.r_max = cfg.b_max;
  std::vector<DoubleRec> out;
  enumerate_doubles(cfg, [&](const DoubleRec& d) { out.push_back(d); });
  return out;
}

bool doubles_match_oracle(std::uint64_t b_max) {
  const auto got = library_doubles(b_max);
  const auto want = oracle::doubles_by_double_loop(b_max);
  if (got.size() != want.size()) {
    note("doubles count mismatch at b_max=" + std::to_string(b_max) + ": got " +
         std::to_string(got.size()) + ", oracle " + std::to_string(want.size()));
    return false;
  }
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (got[i].a != mpz_class(static_cast<unsigned long>(want[i].a)) ||
        got[i].b != mpz_class(static_cast<unsigned long>(want[i].b))) {
      note("doubles record " + std::to_string(i) + " differs at b_max=" +
           std::to_string(b_max));
      return false;
    }
  }
  note("doubles @ b_max=" + std::to_string(b_max) + ": " + std::to_string(got.size()) +
       " records, bit-identical to the double-loop oracle");
  return true;
}

/// Direct-scan pipeline: doubles by double loop, c by direct scan, d by
/// exact regular extension, the same window and gap filter.
std::vector<InitialListEntry> search_by_scan(std::uint64_t b_max, int lo, int hi) {
  std::vector<InitialListEntry> out;
  for (const auto& [a, b] : oracle::doubles_by_double_loop(b_max)) {
    mpz_class blo, bhi;
    mpz_ui_pow_ui(blo.get_mpz_t(), b, static_cast<unsigned long>(lo));
    mpz_ui_pow_ui(bhi.get_mpz_t(), b, static_cast<unsigned long>(hi));
    std::uint64_t na = a * (b + 1) + 1, nb = b * (b + 1) + 1;
    for (std::uint64_t c = b + 1;; ++c, na += a, nb += b) {
      if (!oracle::is_square64(na) || !oracle::is_square64(nb)) continue;
      const mpz_class d = oracle::d_plus_exact(a, b, c);
      if (d >= bhi) break;
      if (d <= blo) continue;
      bool keep;
      try {
        keep = lara_holds(a, b, d).holds;
      } catch (const std::domain_error&) {
        keep = true;
      }
      if (keep)
        out.push_back({mpz_class(static_cast<unsigned long>(a)),
                       mpz_class(static_cast<unsigned long>(b)),
                       mpz_class(static_cast<unsigned long>(c)), d});
    }
  }
  return out;
}

bool criterion5(std::vector<SearchConfig>& prune_configs) {
  bool ok = true;
  auto t0 = std::chrono::steady_clock::now();

  ok &= doubles_match_oracle(100000);
  ok &= doubles_match_oracle(1000000);
  note("doubles oracle runtime " + std::to_string(seconds_since(t0)) + " s");

  // Full-window pipeline equivalence. The published window (b^5, b^8) keeps
  // c near b^4/(4a) and beyond, so a direct c scan is only affordable for
  // small b; a second configuration checks a lower window at larger b.
  t0 = std::chrono::steady_clock::now();
  {
    SearchConfig cfg;
    cfg.b_max = 40;
    cfg.r_max = 40;
    const auto got = initial_list(cfg);
    const auto want = search_by_scan(40, 5, 8);
    ok &= expect(got == want, "search == scan oracle at b_max=40, window (b^5,b^8)");
    note("b_max=40 (5,8): " + std::to_string(got.size()) + " entries");
    bool has_worked = false;
    for (const auto& e : got)
      has_worked |= e == InitialListEntry{8, 15, 21736, mpz_class("10476753")};
    ok &= expect(has_worked, "worked entry (8,15,21736,10476753) present");
    prune_configs.push_back(cfg);
  }
  {
    SearchConfig cfg;
    cfg.b_max = 300;
    cfg.r_max = 300;
    cfg.d_lo_exp = 4;
    cfg.d_hi_exp = 5;
    const auto got = initial_list(cfg);
    const auto want = search_by_scan(300, 4, 5);
    ok &= expect(got == want, "search == scan oracle at b_max=300, window (b^4,b^5)");
    note("b_max=300 (4,5): " + std::to_string(got.size()) + " entries");
  }
  note("scan-oracle runtime " + std::to_string(seconds_since(t0)) + " s");

  // At b_max = 1e5 and 1e6 the full window is far beyond any direct c scan
  // (c starts near b^4/(4a)); the runs are validated by exact per-entry
  // invariant recomputation plus membership of the underlying double in the
  // oracle list, and feed the prune criterion.
  for (std::uint64_t b_max : {100000ull, 1000000ull}) {
    t0 = std::chrono::steady_clock::now();
    SearchConfig cfg;
    cfg.b_max = static_cast<unsigned long>(b_max);
    cfg.r_max = cfg.b_max;
    const auto entries = shard_and_merge(cfg, 2);
    bool entries_ok = true;
    for (const auto& e : entries) {
      mpz_class b5, b8;
      mpz_pow_ui(b5.get_mpz_t(), e.b.get_mpz_t(), 5);
      mpz_pow_ui(b8.get_mpz_t(), e.b.get_mpz_t(), 8);
      entries_ok &= e.a + 2 < e.b && e.b < 2 * e.a && e.b <= cfg.b_max;
      entries_ok &= b5 < e.d && e.d < b8;
      entries_ok &= is_m_tuple({e.a, e.b, e.c, e.d});
      entries_ok &= d_plus(e.a, e.b, e.c) == e.d;
      entries_ok &= lara_holds(e.a, e.b, e.d).holds;
    }
    ok &= expect(entries_ok, "all entries satisfy their invariants at b_max=" +
                                 std::to_string(b_max));
    note("search @ b_max=" + std::to_string(b_max) + ": " + std::to_string(entries.size()) +
         " entries, " + std::to_string(seconds_since(t0)) + " s");
    prune_configs.push_back(cfg);
  }
  return ok;
}

bool criterion6(const std::vector<SearchConfig>& prune_configs) {
  bool ok = true;
  for (const auto& cfg : prune_configs) {
    const auto entries = initial_list(cfg);
    std::size_t lemma_na = 0;
    const auto survivors = prune(entries, [&](const PruneRow& r) {
      if (r.note != "eliminated" && r.note != "retained") ++lemma_na;
    });
    ok &= expect(survivors.empty(), "prune(initial_list) empty at b_max=" + cfg.b_max.get_str());
    ok &= expect(lemma_na == 0, "no out-of-hypothesis entries at b_max=" + cfg.b_max.get_str());
    note("b_max=" + cfg.b_max.get_str() + ": " + std::to_string(entries.size()) +
         " entries, 0 survive");
  }
  return ok;
}

bool criterion7() {
  bool ok = true;
  auto t0 = std::chrono::steady_clock::now();

  const auto doubles = oracle::random_doubles(200, 10000, 424242);
  bool streams_ok = true;
  for (const auto& [a, b] : doubles) {
    const auto want = oracle::c_scan(a, b, 10000000);
    CValueStream s(a, b);
    std::vector<std::uint64_t> got;
    while (true) {
      const mpz_class c = s.next().c;
      if (c > 10000000) break;
      got.push_back(c.get_ui());
    }
    if (got != want) {
      streams_ok = false;
      note("c_values mismatch for (" + std::to_string(a) + "," + std::to_string(b) + ")");
      break;
    }
  }
  ok &= expect(streams_ok, "c_values == brute force (c <= 1e7) on 200 random doubles");
  note("c stream oracle runtime " + std::to_string(seconds_since(t0)) + " s");

  t0 = std::chrono::steady_clock::now();
  bool units_ok = true;
  for (unsigned long D = 2; D <= 5000 && units_ok; ++D) {
    const mpz_class Dz(D);
    if (mpz_perfect_square_p(Dz.get_mpz_t())) continue;
    const FundamentalUnit f = fundamental_unit(Dz);
    units_ok &= f.u * f.u - Dz * f.v * f.v == 1;
    if (f.v <= 20000) {
      const auto naive = oracle::unit_by_scan(Dz, 20000);
      units_ok &= naive.first == f.u && naive.second == f.v;
    } else {
      // the literal scan is unreachable here (v can exceed 10^30); minimality
      // is certified by the scan prefix plus the cyclic-group power test
      units_ok &= oracle::unit_by_scan(Dz, 20000).second == 0;
      for (unsigned p : oracle::kUnitPowerPrimes)
        units_ok &= !oracle::is_unit_power(f.u, f.v, Dz, p);
    }
    if (!units_ok) note("fundamental_unit mismatch at D=" + std::to_string(D));
  }
  ok &= expect(units_ok, "fundamental_unit minimal for all nonsquare D <= 5000");
  note("unit oracle runtime " + std::to_string(seconds_since(t0)) + " s");
  return ok;
}

bool criterion8(const fs::path& tmp) {
  bool ok = true;

  SearchConfig cfg;
  cfg.b_max = 10000;
  cfg.r_max = 10000;
  const auto base = shard_and_merge(cfg, 1);
  for (unsigned k : {2u, 4u, 8u}) {
    ok &= expect(shard_and_merge(cfg, k) == base,
                 "shard_and_merge k=" + std::to_string(k) + " bit-identical");
  }
  note("shard determinism checked for k in {1,2,4,8} (" + std::to_string(base.size()) +
       " entries)");

  // kill mid-run, resume from the checkpoint, compare to a clean run
  const std::string common = "search --b-max 10000 --shards 2 ";
  const fs::path clean = tmp / "clean.txt";
  RunResult r = run_cli(common + "--out " + clean.string(), tmp);
  ok &= expect(r.exit_code == 0, "clean search run");

  const fs::path resumed = tmp / "resumed.txt";
  const fs::path ckpt = tmp / "manifest.txt";
  r = run_cli(common + "--checkpoint-every 64 --debug-halt-after-r 3000 --checkpoint " +
                  ckpt.string() + " --out " + resumed.string(),
              tmp);
  ok &= expect(r.exit_code == 42, "halted run exits with the preemption code");
  r = run_cli(common + "--checkpoint-every 64 --checkpoint " + ckpt.string() + " --out " +
                  resumed.string(),
              tmp);
  ok &= expect(r.exit_code == 0, "resumed run completes");

  std::ifstream f1(clean), f2(resumed);
  std::ostringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  ok &= expect(s1.str() == s2.str(), "kill-and-resume output bit-identical");
  return ok;
}

bool criterion9() {
  bool ok = true;
  const mpfr_prec_t hi = 320;

  // criterion 1 verdicts: the stage-1 filter across the whole (a,b) grid and
  // the stage-3 refilter for the three quadruples
  bool stage_ok = true;
  for (unsigned long a = 1; a <= 25; ++a) {
    for (unsigned long b = 2 * a; b <= 50; ++b) {
      if (!as_double(a, b)) continue;
      mpz_class b5;
      mpz_ui_pow_ui(b5.get_mpz_t(), b, 5);
      const Verdict v160 = hammond_holds(a, b, b5, Real::dec("0.178"));
      const Verdict v320 = hammond_holds(a, b, b5, Real::dec("0.178", hi), hi);
      stage_ok &= v160.margin_certified && v320.margin_certified && v160.holds == v320.holds;
    }
  }
  ok &= expect(stage_ok, "stage-1 filter verdicts certified at 160 bits, stable at 320");

  const struct {
    unsigned long a, b;
    const char* d;
  } quads[] = {{1, 15, "2030624"}, {1, 24, "14600040"}, {1, 35, "70174128"}};
  bool refilter_ok = true;
  for (const auto& q : quads) {
    const mpz_class d(q.d);
    const Verdict v160 = hammond_holds(q.a, q.b, d, Real::dec("0.45"));
    const Verdict v320 = hammond_holds(q.a, q.b, d, Real::dec("0.45", hi), hi);
    refilter_ok &= v160.margin_certified && v320.margin_certified && !v160.holds &&
                   v160.holds == v320.holds;
  }
  ok &= expect(refilter_ok, "stage-3 refilter verdicts certified and stable");

  // criterion 2 verdicts
  const mpz_class wd("10476753");
  const GammaParams g160 = compute_gamma_params(8, 15, wd);
  const GammaParams g320 = compute_gamma_params(8, 15, wd, hi);
  const Verdict r160 = russell_holds(8, 15, wd, g160.gamma3);
  const Verdict r320 = russell_holds(8, 15, wd, g320.gamma3, hi);
  ok &= expect(g160.n0 == g320.n0, "n0 stable under doubled precision");
  ok &= expect(r160.margin_certified && r320.margin_certified && r160.holds == r320.holds,
               "russell verdict certified and stable");
  const Verdict l160 = lara_holds(8, 15, wd);
  const Verdict l320 = lara_holds(8, 15, wd, hi);
  ok &= expect(l160.margin_certified && l320.margin_certified && l160.holds == l320.holds,
               "lara verdict certified and stable");

  // criterion 3 boundary verdicts
  bool thr_ok = true;
  for (ThresholdKind kind : {ThresholdKind::pollock, ThresholdKind::turner}) {
    const mpz_class t = threshold_b(kind);
    for (const mpz_class& b : {t, mpz_class(t + 1)}) {
      const Verdict v160 = threshold_inequality(kind, b);
      const Verdict v320 = threshold_inequality(kind, b, std::nullopt, hi);
      thr_ok &= v160.margin_certified && v320.margin_certified && v160.holds == v320.holds;
    }
    thr_ok &= threshold_b(kind, std::nullopt, hi) == t;
  }
  {
    const Real al160 = Real::dec("0.9862");
    const Real al320 = Real::dec("0.9862", hi);
    const mpz_class t = threshold_b(ThresholdKind::steve_mark, al160);
    for (const mpz_class& b : {t, mpz_class(t + 1)}) {
      const Verdict v160 = threshold_inequality(ThresholdKind::steve_mark, b, al160);
      const Verdict v320 = threshold_inequality(ThresholdKind::steve_mark, b, al320, hi);
      thr_ok &= v160.margin_certified && v320.margin_certified && v160.holds == v320.holds;
    }
    thr_ok &= threshold_b(ThresholdKind::steve_mark, al320, hi) == t;
  }
  ok &= expect(thr_ok, "threshold boundary verdicts certified and stable");

  // criterion 4 boundaries
  bool dm_ok = true;
  for (const char* K : {"0.178", "0.45"}) {
    const auto m160 = d_max_hammond(1, 15, Real::dec(K));
    const auto m320 = d_max_hammond(1, 15, Real::dec(K, hi), hi);
    dm_ok &= m160.has_value() && m320.has_value() && *m160 == *m320;
    if (m160) {
      const Verdict at = hammond_holds(1, 15, *m160, Real::dec(K));
      const Verdict above = hammond_holds(1, 15, *m160 + 1, Real::dec(K));
      dm_ok &= at.margin_certified && at.holds && above.margin_certified && !above.holds;
    }
  }
  ok &= expect(dm_ok, "d_max boundaries certified and stable");
  return ok;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  fs::path tmp = fs::temp_directory_path() / ("dioph_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(tmp);

  std::vector<SearchConfig> prune_configs;
  {
    SearchConfig worked;  // the (8,15) double alone
    worked.r_min = 11;
    worked.r_max = 11;
    worked.b_max = 15;
    prune_configs.push_back(worked);
  }

  finish(1, "b >= 2a case reproduces the published stages", criterion1(tmp));
  finish(2, "worked-example numerics", criterion2());
  finish(3, "b-thresholds", criterion3());
  finish(4, "d bounds for {1,15}", criterion4());
  finish(5, "pipeline equivalence against brute-force oracles", criterion5(prune_configs));
  finish(6, "pruning empties every tested initial list", criterion6(prune_configs));
  finish(7, "Pell machinery matches brute force", criterion7());
  finish(8, "sharding and resume are deterministic", criterion8(tmp));
  finish(9, "verdicts are margin-certified and precision-stable", criterion9());

  fs::remove_all(tmp);
  std::cout << "acceptance: " << (9 - g_failures) << "/9 criteria passed, "
            << seconds_since(t0) << " s\n";
  return g_failures == 0 ? 0 : 1;
}
