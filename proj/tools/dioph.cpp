// Command-line surface for the quintuple elimination pipelines.
//
// Exit codes: 0 success (empty survivor set where applicable); 1 survivors
// found by `prune`; 2 usage or I/O error; 3 internal diagnostic guard.

#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dioph/arith.hpp"
#include "dioph/bounds.hpp"
#include "dioph/errors.hpp"
#include "dioph/pell.hpp"
#include "dioph/records.hpp"
#include "dioph/search.hpp"
#include "dioph/tuples.hpp"

namespace {

using namespace dioph;

constexpr int kExitOk = 0;
constexpr int kExitSurvivors = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDiagnostic = 3;
constexpr int kExitHalted = 42;  // debug preemption, see --debug-halt-after-r

mpz_class parse_int_flag(const std::string& text, const std::string& flag) {
  auto v = parse_int_scientific(text);
  if (!v) throw CLI::ValidationError(flag, "not an exact integer: " + text);
  return *v;
}

struct CommonSearchFlags {
  std::string r_min = "2";
  std::string r_max;
  std::string b_max;
  int d_lo_exp = 5;
  int d_hi_exp = 8;

  SearchConfig to_config() const {
    SearchConfig cfg;
    cfg.r_min = parse_int_flag(r_min, "--r-min");
    cfg.b_max = parse_int_flag(b_max, "--b-max");
    cfg.r_max = r_max.empty() ? cfg.b_max : parse_int_flag(r_max, "--r-max");
    cfg.d_lo_exp = d_lo_exp;
    cfg.d_hi_exp = d_hi_exp;
    validate(cfg);
    return cfg;
  }
};

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  return file;
}

int cmd_doubles(const CommonSearchFlags& flags, const std::string& out_path) {
  const SearchConfig cfg = flags.to_config();
  std::ofstream file;
  std::ostream& out = open_out(file, out_path);
  std::uint64_t count = 0;
  enumerate_doubles(cfg, [&](const DoubleRec& d) {
    out << format_double(d);
    ++count;
  });
  out.flush();
  std::cerr << "doubles: " << count << "\n";
  return kExitOk;
}

// ---- sharded, checkpointed search ----------------------------------------

class ShardWriter {
 public:
  ShardWriter(const std::string& path, std::uint64_t resume_bytes) : path_(path) {
    fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT, 0644);
    if (fd_ < 0) throw std::runtime_error("cannot open shard output " + path);
    // drop any bytes written after the last durable checkpoint
    if (::ftruncate(fd_, static_cast<off_t>(resume_bytes)) != 0 ||
        ::lseek(fd_, 0, SEEK_END) < 0)
      throw std::runtime_error("cannot truncate shard output " + path);
    bytes_ = resume_bytes;
  }
  ~ShardWriter() {
    if (fd_ >= 0) ::close(fd_);
  }

  void append(const std::string& text) {
    buffer_ += text;
    if (buffer_.size() >= 1 << 16) flush_buffer();
  }

  /// Flushes and fsyncs; returns the durable byte count.
  std::uint64_t sync() {
    flush_buffer();
    if (::fsync(fd_) != 0) throw std::runtime_error("fsync failed on " + path_);
    return bytes_;
  }

 private:
  void flush_buffer() {
    const char* p = buffer_.data();
    std::size_t left = buffer_.size();
    while (left > 0) {
      ssize_t n = ::write(fd_, p, left);
      if (n < 0) throw std::runtime_error("write failed on " + path_);
      p += n;
      left -= static_cast<std::size_t>(n);
    }
    bytes_ += buffer_.size();
    buffer_.clear();
  }

  std::string path_;
  int fd_ = -1;
  std::string buffer_;
  std::uint64_t bytes_ = 0;
};

struct SearchCmdArgs {
  CommonSearchFlags flags;
  unsigned shards = 1;
  std::string out_path;
  std::string checkpoint_path;
  std::uint64_t checkpoint_every = 4096;
  std::string halt_after_r;  // debug: simulate preemption
  long prec = kDefaultPrec;
};

int cmd_search(const SearchCmdArgs& args) {
  const SearchConfig cfg = args.flags.to_config();
  if (args.shards < 1) throw CLI::ValidationError("--shards", "must be >= 1");
  if (args.out_path.empty()) throw CLI::ValidationError("--out", "required for search");

  std::optional<mpz_class> halt_r;
  if (!args.halt_after_r.empty())
    halt_r = parse_int_flag(args.halt_after_r, "--debug-halt-after-r");

  RunManifest manifest;
  const bool have_checkpoint = !args.checkpoint_path.empty();
  if (have_checkpoint) {
    if (auto loaded = load_manifest(args.checkpoint_path)) {
      manifest = *loaded;
      if (manifest.cfg.r_min != cfg.r_min || manifest.cfg.r_max != cfg.r_max ||
          manifest.cfg.b_max != cfg.b_max || manifest.cfg.d_lo_exp != cfg.d_lo_exp ||
          manifest.cfg.d_hi_exp != cfg.d_hi_exp || manifest.shards != args.shards) {
        std::cerr << "error: checkpoint " << args.checkpoint_path
                  << " was created with a different configuration\n";
        return kExitUsage;
      }
    }
  }
  if (manifest.shard_states.empty()) {
    manifest.cfg = cfg;
    manifest.shards = args.shards;
    for (const Shard& s : make_shards(cfg, args.shards)) {
      RunManifest::ShardState st;
      st.r_lo = s.r_lo;
      st.r_hi = s.r_hi;
      st.output_path =
          args.out_path + ".shard" + std::to_string(manifest.shard_states.size());
      st.last_r = s.r_lo - 1;
      manifest.shard_states.push_back(std::move(st));
    }
    if (have_checkpoint) save_manifest(args.checkpoint_path, manifest);
  }

  std::mutex manifest_mu;
  std::atomic<bool> failed{false};
  std::string failure;

  auto run_shard = [&](std::size_t index) {
    try {
      RunManifest::ShardState st;
      {
        std::lock_guard<std::mutex> lock(manifest_mu);
        st = manifest.shard_states[index];
      }
      if (st.done) return;
      ShardWriter writer(st.output_path, st.out_bytes);

      SearchConfig shard_cfg = cfg;
      shard_cfg.r_min = st.r_lo;
      shard_cfg.r_max = st.r_hi;

      // counters resume from the checkpointed values; run_initial_list
      // restarts its own counting from zero
      const SearchCounters base = st.counters;
      std::uint64_t since_checkpoint = 0;

      SearchHooks hooks;
      hooks.emit = [&](const InitialListEntry& e) { writer.append(format_entry(e)); };
      hooks.completed_r = [&](const mpz_class& r, const SearchCounters& c) {
        ++since_checkpoint;
        const bool halt_here = halt_r && r == *halt_r;
        if (since_checkpoint >= args.checkpoint_every || r == st.r_hi) {
          since_checkpoint = 0;
          if (have_checkpoint && !halt_here) {
            const std::uint64_t durable = writer.sync();
            std::lock_guard<std::mutex> lock(manifest_mu);
            auto& live = manifest.shard_states[index];
            live.last_r = r;
            live.out_bytes = durable;
            live.counters = {base.pairs + c.pairs, base.candidates + c.candidates,
                             base.survivors + c.survivors};
            save_manifest(args.checkpoint_path, manifest);
          }
        }
        if (halt_here) {
          std::cerr << "debug: halting after r=" << r << "\n";
          std::_Exit(kExitHalted);  // simulated preemption: no cleanup
        }
      };
      SearchCounters ran =
          run_initial_list(shard_cfg, st.last_r + 1, hooks, static_cast<mpfr_prec_t>(args.prec));
      const std::uint64_t durable = writer.sync();
      {
        std::lock_guard<std::mutex> lock(manifest_mu);
        auto& live = manifest.shard_states[index];
        live.done = true;
        live.last_r = st.r_hi;
        live.out_bytes = durable;
        live.counters = {base.pairs + ran.pairs, base.candidates + ran.candidates,
                         base.survivors + ran.survivors};
        if (have_checkpoint) save_manifest(args.checkpoint_path, manifest);
      }
    } catch (const std::exception& ex) {
      failed = true;
      std::lock_guard<std::mutex> lock(manifest_mu);
      failure = ex.what();
    }
  };

  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < manifest.shard_states.size(); ++i) pool.emplace_back(run_shard, i);
  for (auto& t : pool) t.join();
  if (failed) throw std::runtime_error("shard failed: " + failure);

  for (const auto& st : manifest.shard_states) {
    if (!st.done) {
      std::cerr << "error: shard [" << st.r_lo << "," << st.r_hi
                << "] incomplete; refusing to merge\n";
      return kExitUsage;
    }
  }

  // ordered concatenation of the contiguous shards = the unsharded output
  {
    std::ofstream out(args.out_path, std::ios::trunc | std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + args.out_path + " for writing");
    for (const auto& st : manifest.shard_states) {
      std::ifstream in(st.output_path, std::ios::binary);
      if (!in) throw std::runtime_error("missing shard output " + st.output_path);
      out << in.rdbuf();
      if (!out) throw std::runtime_error("merge write failed");
    }
    out.flush();
    if (!out) throw std::runtime_error("merge write failed");
  }
  for (const auto& st : manifest.shard_states) std::filesystem::remove(st.output_path);

  const SearchCounters totals = manifest.totals();
  std::cerr << "pairs=" << totals.pairs << " candidates=" << totals.candidates
            << " survivors=" << totals.survivors << "\n";
  return kExitOk;
}

std::string gamma_report_line(const PruneRow& row) {
  std::ostringstream os;
  os << row.entry.a << " " << row.entry.b << " " << row.entry.c << " " << row.entry.d;
  if (row.gamma) {
    os << " n0=" << row.gamma->n0 << " gamma1=" << row.gamma->gamma1.str(8)
       << " gamma2=" << row.gamma->gamma2.str(8);
    if (row.gamma->lemma_applicable) os << " gamma3=" << row.gamma->gamma3.str(8);
  }
  if (row.russell)
    os << " lhs=" << row.russell->lhs.str(8) << " rhs=" << row.russell->rhs.str(8);
  os << " " << row.note << "\n";
  return os.str();
}

int cmd_prune(const std::string& in_path, const std::string& out_path,
              const std::string& report_path, long prec) {
  const std::vector<InitialListEntry> entries = read_entries(in_path);

  std::ofstream report_file;
  std::ostream* report = &std::cout;
  if (!report_path.empty()) {
    report_file.open(report_path, std::ios::trunc);
    if (!report_file) throw std::runtime_error("cannot open " + report_path + " for writing");
    report = &report_file;
  }

  const std::vector<InitialListEntry> survivors = prune(
      entries, [&](const PruneRow& row) { *report << gamma_report_line(row); },
      static_cast<mpfr_prec_t>(prec));
  report->flush();

  if (!out_path.empty()) write_entries(out_path, survivors);
  std::cerr << "pruned " << entries.size() << " entries; survivors=" << survivors.size() << "\n";
  return survivors.empty() ? kExitOk : kExitSurvivors;
}

int cmd_case1(long prec) {
  const CaseOneReport rep = case_b_ge_2a(static_cast<mpfr_prec_t>(prec));
  std::cout << "surviving doubles: " << rep.doubles.size() << "\n";
  for (const auto& s : rep.doubles) {
    std::cout << "  " << s.dbl.a << " " << s.dbl.b << "  d_max=";
    if (s.d_max)
      std::cout << *s.d_max;
    else
      std::cout << "none";
    std::cout << "\n";
  }
  std::cout << "candidate quadruples: " << rep.quadruples.size() << "\n";
  for (const auto& q : rep.quadruples)
    std::cout << "  " << q.a << " " << q.b << " " << q.c << " " << q.d << "\n";
  std::cout << "final set: " << rep.final_set.size() << "\n";
  for (const auto& q : rep.final_set)
    std::cout << "  " << q.a << " " << q.b << " " << q.c << " " << q.d << "\n";
  return kExitOk;
}

int cmd_bounds(const std::string& alpha_text, const std::string& grid_step_text, long prec) {
  const auto p = static_cast<mpfr_prec_t>(prec);
  std::cout << "threshold pollock: " << threshold_b(ThresholdKind::pollock, std::nullopt, p)
            << "\n";
  std::cout << "threshold turner: " << threshold_b(ThresholdKind::turner, std::nullopt, p)
            << "\n";
  const Real alpha = Real::dec(alpha_text, p);
  std::cout << "threshold steve_mark(alpha=" << alpha.str(6)
            << "): " << threshold_b(ThresholdKind::steve_mark, alpha, p) << "\n";
  const AlphaResult opt = optimize_alpha(Real::dec(grid_step_text, p), p);
  std::cout << "optimize_alpha(step=" << grid_step_text << "): alpha=" << opt.alpha.str(6)
            << " bound=" << opt.bound << "\n";
  return kExitOk;
}

int cmd_pell(const std::string& a_text, const std::string& b_text, unsigned count) {
  const mpz_class a = parse_int_flag(a_text, "a");
  const mpz_class b = parse_int_flag(b_text, "b");
  CValueStream stream(a, b);
  const PellInstance& inst = stream.instance();
  std::cout << "instance: g=" << inst.g << " a_dag=" << inst.a_dag << " b_dag=" << inst.b_dag
            << " D=" << inst.D << " N=" << inst.N << "\n";
  std::cout << "unit: u=" << stream.unit().u << " v=" << stream.unit().v << "\n";
  std::cout << "classes: " << stream.classes().size() << "\n";
  for (const auto& cls : stream.classes())
    std::cout << "  X0=" << cls.X0 << " y0=" << cls.y0 << "\n";
  std::cout << "c:";
  for (unsigned i = 0; i < count; ++i) std::cout << " " << stream.next().c;
  std::cout << "\n";
  return kExitOk;
}

int cmd_verify(const std::vector<std::string>& values) {
  std::vector<mpz_class> v;
  for (const auto& s : values) v.push_back(parse_int_flag(s, "values"));
  static const char* kNames[] = {"single", "double", "triple", "quadruple", "quintuple"};
  const std::string name = v.size() <= 5 ? kNames[v.size() - 1] : std::to_string(v.size()) + "-tuple";
  const bool ok = is_m_tuple(v);
  std::cout << name << ": " << (ok ? "yes" : "no") << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pell machinery and search pipelines for Diophantine quintuple elimination"};
  app.require_subcommand(1);

  // doubles
  auto* doubles_cmd = app.add_subcommand("doubles", "enumerate qualifying pairs {a,b}");
  CommonSearchFlags dbl_flags;
  std::string dbl_out;
  doubles_cmd->add_option("--r-min", dbl_flags.r_min);
  doubles_cmd->add_option("--r-max", dbl_flags.r_max);
  doubles_cmd->add_option("--b-max", dbl_flags.b_max)->required();
  doubles_cmd->add_option("--out", dbl_out);

  // search
  auto* search_cmd = app.add_subcommand("search", "produce the initial list");
  SearchCmdArgs search_args;
  search_cmd->add_option("--r-min", search_args.flags.r_min);
  search_cmd->add_option("--r-max", search_args.flags.r_max);
  search_cmd->add_option("--b-max", search_args.flags.b_max)->required();
  search_cmd->add_option("--d-lo-exp", search_args.flags.d_lo_exp);
  search_cmd->add_option("--d-hi-exp", search_args.flags.d_hi_exp);
  search_cmd->add_option("--shards", search_args.shards);
  search_cmd->add_option("--checkpoint", search_args.checkpoint_path);
  search_cmd->add_option("--checkpoint-every", search_args.checkpoint_every);
  search_cmd->add_option("--out", search_args.out_path)->required();
  search_cmd->add_option("--prec", search_args.prec);
  search_cmd->add_option("--debug-halt-after-r", search_args.halt_after_r)
      ->group("");  // hidden

  // prune
  auto* prune_cmd = app.add_subcommand("prune", "prune an initial list");
  std::string prune_in, prune_out, prune_report;
  long prune_prec = kDefaultPrec;
  prune_cmd->add_option("--in", prune_in)->required();
  prune_cmd->add_option("--out", prune_out);
  prune_cmd->add_option("--report", prune_report);
  prune_cmd->add_option("--prec", prune_prec);

  // case1
  auto* case1_cmd = app.add_subcommand("case1", "run the b >= 2a elimination");
  long case1_prec = kDefaultPrec;
  case1_cmd->add_option("--prec", case1_prec);

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "print b-thresholds and the alpha optimum");
  std::string bounds_alpha = "0.9862", bounds_step = "0.001";
  long bounds_prec = kDefaultPrec;
  bounds_cmd->add_option("--alpha", bounds_alpha);
  bounds_cmd->add_option("--grid-step", bounds_step);
  bounds_cmd->add_option("--prec", bounds_prec);

  // pell
  auto* pell_cmd = app.add_subcommand("pell", "solve one double's Pellian system");
  std::string pell_a, pell_b;
  unsigned pell_count = 8;
  pell_cmd->add_option("a", pell_a)->required();
  pell_cmd->add_option("b", pell_b)->required();
  pell_cmd->add_option("--count", pell_count);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "check a tuple");
  std::vector<std::string> verify_values;
  verify_cmd->add_option("values", verify_values)->required()->expected(-1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message/help
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (doubles_cmd->parsed()) return cmd_doubles(dbl_flags, dbl_out);
    if (search_cmd->parsed()) return cmd_search(search_args);
    if (prune_cmd->parsed()) return cmd_prune(prune_in, prune_out, prune_report, prune_prec);
    if (case1_cmd->parsed()) return cmd_case1(case1_prec);
    if (bounds_cmd->parsed()) return cmd_bounds(bounds_alpha, bounds_step, bounds_prec);
    if (pell_cmd->parsed()) return cmd_pell(pell_a, pell_b, pell_count);
    if (verify_cmd->parsed()) return cmd_verify(verify_values);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const diagnostic_error& e) {
    std::cerr << "diagnostic: " << e.what() << "\n";
    return kExitDiagnostic;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
