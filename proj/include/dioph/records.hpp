#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/search.hpp"

namespace dioph {

// Record format: one entry per line, ASCII decimal, space separated,
// newline terminated, no header. Doubles are "a b", entries "a b c d".

std::string format_double(const DoubleRec& d);
std::string format_entry(const InitialListEntry& e);
std::optional<InitialListEntry> parse_entry(std::string_view line);

std::vector<InitialListEntry> read_entries(const std::string& path);
void write_entries(const std::string& path, const std::vector<InitialListEntry>& entries);

/// Parses a nonnegative integer given either plainly ("1300000000") or in
/// scientific shorthand ("1.3e9"); the value must be exactly integral.
std::optional<mpz_class> parse_int_scientific(std::string_view s);

/// Search-run state persisted as line-oriented key=value text. Counters are
/// monotone across checkpoints; the encoding round-trips losslessly.
struct RunManifest {
  SearchConfig cfg;
  unsigned shards = 1;

  struct ShardState {
    mpz_class r_lo, r_hi;
    std::string output_path;
    bool done = false;
    mpz_class last_r;           // last fully processed r (r_lo-1 if none)
    std::uint64_t out_bytes = 0;  // durable output size at the checkpoint
    SearchCounters counters;
  };
  std::vector<ShardState> shard_states;

  std::string to_text() const;
  static RunManifest from_text(const std::string& text);

  SearchCounters totals() const;
};

/// Atomic replace (write temp, fsync, rename).
void save_manifest(const std::string& path, const RunManifest& m);
std::optional<RunManifest> load_manifest(const std::string& path);

}  // namespace dioph
