#include "dioph/records.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace dioph {
namespace {

[[noreturn]] void io_fail(const std::string& what) {
  throw std::system_error(errno, std::generic_category(), what);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ' ' || ch == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::optional<mpz_class> parse_mpz(const std::string& s) {
  mpz_class v;
  if (s.empty() || mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0) return std::nullopt;
  return v;
}

}  // namespace

std::string format_double(const DoubleRec& d) {
  return d.a.get_str() + " " + d.b.get_str() + "\n";
}

std::string format_entry(const InitialListEntry& e) {
  return e.a.get_str() + " " + e.b.get_str() + " " + e.c.get_str() + " " + e.d.get_str() + "\n";
}

std::optional<InitialListEntry> parse_entry(std::string_view line) {
  auto parts = split_ws(line);
  if (parts.size() != 4) return std::nullopt;
  InitialListEntry e;
  mpz_class* slots[4] = {&e.a, &e.b, &e.c, &e.d};
  for (int i = 0; i < 4; ++i) {
    auto v = parse_mpz(parts[i]);
    if (!v) return std::nullopt;
    *slots[i] = *v;
  }
  return e;
}

std::vector<InitialListEntry> read_entries(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<InitialListEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto e = parse_entry(line);
    if (!e) throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad entry record");
    out.push_back(*e);
  }
  return out;
}

void write_entries(const std::string& path, const std::vector<InitialListEntry>& entries) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const auto& e : entries) out << format_entry(e);
  if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

std::optional<mpz_class> parse_int_scientific(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string digits;
  long frac_digits = 0;
  long exponent = 0;
  std::size_t i = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    char ch = s[i];
    if (ch == '.') {
      if (seen_dot) return std::nullopt;
      seen_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else {
      return std::nullopt;
    }
  }
  if (!seen_digit) return std::nullopt;
  if (i < s.size()) {  // exponent part
    ++i;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
    if (i >= s.size()) return std::nullopt;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
      exponent = exponent * 10 + (s[i] - '0');
      if (exponent > 1000000) return std::nullopt;
    }
    if (neg) exponent = -exponent;
  }
  const long shift = exponent - frac_digits;
  mpz_class v;
  if (mpz_set_str(v.get_mpz_t(), digits.c_str(), 10) != 0) return std::nullopt;
  if (shift >= 0) {
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift));
    return v * pow10;
  }
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
  if (!mpz_divisible_p(v.get_mpz_t(), pow10.get_mpz_t())) return std::nullopt;  // not integral
  return v / pow10;
}

std::string RunManifest::to_text() const {
  std::ostringstream out;
  out << "r_min=" << cfg.r_min << "\n";
  out << "r_max=" << cfg.r_max << "\n";
  out << "b_max=" << cfg.b_max << "\n";
  out << "d_lo_exp=" << cfg.d_lo_exp << "\n";
  out << "d_hi_exp=" << cfg.d_hi_exp << "\n";
  out << "shards=" << shards << "\n";
  for (std::size_t i = 0; i < shard_states.size(); ++i) {
    const auto& s = shard_states[i];
    const std::string p = "shard." + std::to_string(i) + ".";
    out << p << "r_lo=" << s.r_lo << "\n";
    out << p << "r_hi=" << s.r_hi << "\n";
    out << p << "output=" << s.output_path << "\n";
    out << p << "status=" << (s.done ? "done" : "pending") << "\n";
    out << p << "last_r=" << s.last_r << "\n";
    out << p << "out_bytes=" << s.out_bytes << "\n";
    out << p << "pairs=" << s.counters.pairs << "\n";
    out << p << "candidates=" << s.counters.candidates << "\n";
    out << p << "survivors=" << s.counters.survivors << "\n";
  }
  return out.str();
}

RunManifest RunManifest::from_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("manifest: bad line: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  auto need = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::runtime_error("manifest: missing key " + key);
    return it->second;
  };
  auto need_mpz = [&](const std::string& key) {
    auto v = parse_mpz(need(key));
    if (!v) throw std::runtime_error("manifest: bad integer for " + key);
    return *v;
  };

  RunManifest m;
  m.cfg.r_min = need_mpz("r_min");
  m.cfg.r_max = need_mpz("r_max");
  m.cfg.b_max = need_mpz("b_max");
  m.cfg.d_lo_exp = static_cast<int>(need_mpz("d_lo_exp").get_si());
  m.cfg.d_hi_exp = static_cast<int>(need_mpz("d_hi_exp").get_si());
  m.shards = static_cast<unsigned>(need_mpz("shards").get_ui());
  for (unsigned i = 0;; ++i) {
    const std::string p = "shard." + std::to_string(i) + ".";
    if (!kv.count(p + "r_lo")) break;
    ShardState s;
    s.r_lo = need_mpz(p + "r_lo");
    s.r_hi = need_mpz(p + "r_hi");
    s.output_path = need(p + "output");
    const std::string& st = need(p + "status");
    if (st != "done" && st != "pending") throw std::runtime_error("manifest: bad status " + st);
    s.done = st == "done";
    s.last_r = need_mpz(p + "last_r");
    s.out_bytes = need_mpz(p + "out_bytes").get_ui();
    s.counters.pairs = need_mpz(p + "pairs").get_ui();
    s.counters.candidates = need_mpz(p + "candidates").get_ui();
    s.counters.survivors = need_mpz(p + "survivors").get_ui();
    m.shard_states.push_back(std::move(s));
  }
  return m;
}

SearchCounters RunManifest::totals() const {
  SearchCounters t;
  for (const auto& s : shard_states) {
    t.pairs += s.counters.pairs;
    t.candidates += s.counters.candidates;
    t.survivors += s.counters.survivors;
  }
  return t;
}

void save_manifest(const std::string& path, const RunManifest& m) {
  const std::string tmp = path + ".tmp";
  const std::string text = m.to_text();
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) io_fail("open " + tmp);
  const char* p = text.data();
  std::size_t left = text.size();
  while (left > 0) {
    ssize_t n = ::write(fd, p, left);
    if (n < 0) {
      ::close(fd);
      io_fail("write " + tmp);
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0) {
    ::close(fd);
    io_fail("fsync " + tmp);
  }
  ::close(fd);
  if (::rename(tmp.c_str(), path.c_str()) != 0) io_fail("rename " + tmp);
}

std::optional<RunManifest> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return RunManifest::from_text(ss.str());
}

}  // namespace dioph
