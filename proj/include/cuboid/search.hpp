#pragma once

// Height-bounded search over the parameter plane with graded JSONL output
// and crash-safe checkpoint/resume.
//
// Points are enumerated row-major over two ascending value lists (b outer,
// c inner), so a point is identified by its linear cursor. Work is split
// into fixed-size blocks of consecutive cursors. Blocks may finish in any
// order but are committed strictly in order: output, hit file and counts
// always describe an exact prefix of the enumeration, and the checkpoint
// records that prefix together with the byte lengths of both files. On
// resume the files are truncated back to those lengths, so records written
// after the last checkpoint are never duplicated.

#include "cuboid/coefficients.hpp"
#include "cuboid/singularity.hpp"
#include "cuboid/verifier.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cuboid {

struct CheckpointMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Interval {
  Rational lo;
  Rational hi;
  bool contains(const Rational& r) const { return lo <= r && r <= hi; }
};

struct SearchSpace {
  unsigned long height = 1;
  std::optional<Interval> b_range;
  std::optional<Interval> c_range;
  E21Form e21_form = E21Form::Printed;
};

// All p/q in lowest terms with |p| <= height, 1 <= q <= height, ascending.
inline std::vector<Rational> height_values(unsigned long height, const std::optional<Interval>& range = {}) {
  std::vector<Rational> out;
  if (height == 0) return out;
  out.emplace_back(0);
  for (unsigned long q = 1; q <= height; ++q)
    for (unsigned long p = 1; p <= height; ++p)
      if (std::gcd(p, q) == 1) {
        Rational r(static_cast<long>(p), static_cast<long>(q));
        out.push_back(r);
        out.push_back(-r);
      }
  std::sort(out.begin(), out.end());
  if (range) std::erase_if(out, [&](const Rational& r) { return !range->contains(r); });
  return out;
}

// Random-access view of the enumeration.
class PointGrid {
 public:
  explicit PointGrid(const SearchSpace& space)
      : bs_(height_values(space.height, space.b_range)), cs_(height_values(space.height, space.c_range)) {}

  std::uint64_t size() const { return std::uint64_t(bs_.size()) * cs_.size(); }
  Params at(std::uint64_t cursor) const { return {bs_[cursor / cs_.size()], cs_[cursor % cs_.size()]}; }

  const std::vector<Rational>& b_values() const { return bs_; }
  const std::vector<Rational>& c_values() const { return cs_; }

 private:
  std::vector<Rational> bs_;
  std::vector<Rational> cs_;
};

inline std::vector<Params> enumerate(const SearchSpace& space) {
  if (space.height < 1) throw std::invalid_argument("search height must be at least 1");
  PointGrid grid(space);
  std::vector<Params> out;
  out.reserve(grid.size());
  for (std::uint64_t i = 0; i < grid.size(); ++i) out.push_back(grid.at(i));
  return out;
}

inline std::string canonical_config(const SearchSpace& s) {
  auto range = [](const std::optional<Interval>& r) {
    return r ? "[" + r->lo.str() + "," + r->hi.str() + "]" : std::string("*");
  };
  return "height=" + std::to_string(s.height) + ";b=" + range(s.b_range) + ";c=" + range(s.c_range) +
         ";e21=" + std::string(to_string(s.e21_form));
}

// FNV-1a 64 of the canonical configuration string.
inline std::string config_digest(const SearchSpace& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : "cuboid-search/1;" + canonical_config(s)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string iso8601_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct SearchRecord {
  Params params;
  int level = 0;
  std::string reason;
  std::vector<Rational> residuals;
  E21Form e21_form = E21Form::Printed;
  std::string timestamp;

  static SearchRecord from_verdict(const Params& p, const Verdict& v) {
    return {p, v.level, v.reason, v.residuals, v.e21_form, iso8601_now()};
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["b"] = params.b.str();
    j["c"] = params.c.str();
    j["level"] = level;
    j["reason"] = reason;
    j["residuals"] = nlohmann::ordered_json::array();
    for (const auto& r : residuals) j["residuals"].push_back(r.str());
    j["e21_form"] = std::string(to_string(e21_form));
    j["ts"] = timestamp;
    return j;
  }

  std::string to_line() const { return to_json().dump() + "\n"; }

  static SearchRecord from_json(const nlohmann::json& j) {
    SearchRecord r;
    r.params = {parse_rational(j.at("b").get<std::string>()), parse_rational(j.at("c").get<std::string>())};
    r.level = j.at("level").get<int>();
    r.reason = j.at("reason").get<std::string>();
    for (const auto& v : j.at("residuals")) r.residuals.push_back(parse_rational(v.get<std::string>()));
    auto form = parse_e21_form(j.at("e21_form").get<std::string>());
    if (!form) throw ParseError("unknown e21_form in record");
    r.e21_form = *form;
    r.timestamp = j.value("ts", "");
    return r;
  }

  // Same record ignoring the timestamp.
  bool same_result(const SearchRecord& o) const {
    return params == o.params && level == o.level && reason == o.reason && residuals == o.residuals &&
           e21_form == o.e21_form;
  }
};

inline std::vector<SearchRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<SearchRecord> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(SearchRecord::from_json(nlohmann::json::parse(line)));
  return out;
}

// Records without timestamps, one JSON object per line, sorted.
inline std::vector<std::string> canonical_lines(const std::vector<SearchRecord>& records) {
  std::vector<std::string> lines;
  lines.reserve(records.size());
  for (const auto& r : records) {
    auto j = r.to_json();
    j.erase("ts");
    lines.push_back(j.dump());
  }
  std::sort(lines.begin(), lines.end());
  return lines;
}

struct LevelCounts {
  std::uint64_t singular = 0;
  std::array<std::uint64_t, 7> level{};  // nonsingular points by achieved level

  void add(const Verdict& v) {
    if (!v.singular.empty()) ++singular;
    else ++level[static_cast<std::size_t>(v.level)];
  }
  LevelCounts& operator+=(const LevelCounts& o) {
    singular += o.singular;
    for (std::size_t i = 0; i < level.size(); ++i) level[i] += o.level[i];
    return *this;
  }
  std::uint64_t total() const { return std::accumulate(level.begin(), level.end(), singular); }
  friend bool operator==(const LevelCounts&, const LevelCounts&) = default;
};

struct Checkpoint {
  static constexpr int kVersion = 1;

  std::string digest;
  std::string config;
  std::uint64_t cursor = 0;
  std::uint64_t total = 0;
  std::uint64_t output_bytes = 0;
  std::uint64_t hits_bytes = 0;
  LevelCounts counts;
  bool complete = false;
  bool stopped_on_hit = false;

  std::string to_text() const {
    std::ostringstream os;
    os << "cuboid-search-checkpoint " << kVersion << "\n"
       << "digest " << digest << "\n"
       << "config " << config << "\n"
       << "cursor " << cursor << "\n"
       << "total " << total << "\n"
       << "output_bytes " << output_bytes << "\n"
       << "hits_bytes " << hits_bytes << "\n"
       << "singular " << counts.singular << "\n";
    for (std::size_t i = 0; i < counts.level.size(); ++i) os << "level" << i << " " << counts.level[i] << "\n";
    os << "complete " << (complete ? 1 : 0) << "\n"
       << "stopped_on_hit " << (stopped_on_hit ? 1 : 0) << "\n";
    return os.str();
  }

  static Checkpoint from_text(const std::string& text) {
    std::istringstream is(text);
    std::string magic;
    int version = 0;
    if (!(is >> magic >> version) || magic != "cuboid-search-checkpoint")
      throw IoError("not a cuboid search checkpoint");
    if (version != kVersion) throw IoError("unsupported checkpoint version " + std::to_string(version));
    Checkpoint cp;
    std::string key;
    while (is >> key) {
      if (key == "digest") is >> cp.digest;
      else if (key == "config") is >> cp.config;
      else if (key == "cursor") is >> cp.cursor;
      else if (key == "total") is >> cp.total;
      else if (key == "output_bytes") is >> cp.output_bytes;
      else if (key == "hits_bytes") is >> cp.hits_bytes;
      else if (key == "singular") is >> cp.counts.singular;
      else if (key.starts_with("level") && key.size() == 6 && key[5] >= '0' && key[5] <= '6')
        is >> cp.counts.level[static_cast<std::size_t>(key[5] - '0')];
      else if (key == "complete") { int v = 0; is >> v; cp.complete = v != 0; }
      else if (key == "stopped_on_hit") { int v = 0; is >> v; cp.stopped_on_hit = v != 0; }
      else throw IoError("unknown checkpoint field '" + key + "'");
      if (!is) throw IoError("malformed checkpoint field '" + key + "'");
    }
    return cp;
  }

  static std::optional<Checkpoint> load(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    std::ifstream in(path);
    if (!in) throw IoError("cannot read checkpoint " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
  }

  // Write-then-rename so a crash never leaves a torn checkpoint.
  void save(const std::filesystem::path& path) const {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << to_text();
      out.flush();
      if (!out) throw IoError("cannot write checkpoint " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot replace checkpoint " + path.string() + ": " + ec.message());
  }
};

struct RunOptions {
  unsigned jobs = 1;
  std::filesystem::path checkpoint_path;
  std::filesystem::path output_path;
  std::filesystem::path hits_path;  // defaults to output_path + ".hits"
  bool stop_on_hit = false;
  std::uint64_t block_size = 256;
  std::chrono::milliseconds checkpoint_interval{1000};
  // Testing hook: abandon the run after committing this many blocks,
  // without writing a final checkpoint, as if the process were killed.
  std::optional<std::uint64_t> abandon_after_blocks;
  std::function<void(const Checkpoint&)> on_progress;
};

struct SearchSummary {
  LevelCounts counts;
  std::uint64_t total_points = 0;
  std::uint64_t visited = 0;
  std::uint64_t hits = 0;
  bool complete = false;
  bool stopped_on_hit = false;
  bool resumed = false;
  E21Form e21_form = E21Form::Printed;
};

namespace detail {

struct BlockResult {
  LevelCounts counts;
  std::string lines;
  std::string hit_lines;
  std::uint64_t hits = 0;
};

inline BlockResult run_block(const PointGrid& grid, std::uint64_t begin, std::uint64_t end, E21Form form) {
  BlockResult out;
  for (std::uint64_t i = begin; i < end; ++i) {
    Params p = grid.at(i);
    Verdict v = grade(p, form);
    out.counts.add(v);
    if (!v.singular.empty() || v.level < 1) continue;
    std::string line = SearchRecord::from_verdict(p, v).to_line();
    out.lines += line;
    if (v.level == 6) {
      out.hit_lines += line;
      ++out.hits;
    }
  }
  return out;
}

inline std::uint64_t file_size_or_zero(const std::filesystem::path& p) {
  std::error_code ec;
  auto n = std::filesystem::file_size(p, ec);
  return ec ? 0 : n;
}

inline void truncate_to(const std::filesystem::path& p, std::uint64_t bytes) {
  std::error_code ec;
  bool exists = std::filesystem::exists(p, ec);
  if (!exists) {
    if (bytes != 0) throw IoError(p.string() + " is missing but the checkpoint expects " + std::to_string(bytes) + " bytes");
    std::ofstream(p, std::ios::trunc);
    return;
  }
  if (file_size_or_zero(p) < bytes)
    throw IoError(p.string() + " is shorter than the checkpoint expects");
  std::filesystem::resize_file(p, bytes, ec);
  if (ec) throw IoError("cannot truncate " + p.string() + ": " + ec.message());
}

}  // namespace detail

inline SearchSummary run(const SearchSpace& space, const RunOptions& opts) {
  if (space.height < 1) throw std::invalid_argument("search height must be at least 1");
  if (opts.jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (opts.block_size < 1) throw std::invalid_argument("block size must be at least 1");

  const PointGrid grid(space);
  const std::filesystem::path hits_path =
      opts.hits_path.empty() ? std::filesystem::path(opts.output_path.string() + ".hits") : opts.hits_path;

  SearchSummary summary;
  summary.total_points = grid.size();
  summary.e21_form = space.e21_form;

  Checkpoint cp;
  cp.digest = config_digest(space);
  cp.config = canonical_config(space);
  cp.total = grid.size();

  if (!opts.checkpoint_path.empty()) {
    if (auto prev = Checkpoint::load(opts.checkpoint_path)) {
      if (prev->digest != cp.digest)
        throw CheckpointMismatch("checkpoint " + opts.checkpoint_path.string() + " was written for '" +
                                 prev->config + "', not '" + cp.config + "'");
      cp = *prev;
      summary.resumed = true;
    }
  }
  detail::truncate_to(opts.output_path, cp.output_bytes);
  detail::truncate_to(hits_path, cp.hits_bytes);

  if (cp.complete || cp.stopped_on_hit) {
    summary.counts = cp.counts;
    summary.visited = cp.cursor;
    summary.complete = cp.complete;
    summary.stopped_on_hit = cp.stopped_on_hit;
    summary.hits = cp.counts.level[6];
    return summary;
  }

  std::ofstream out(opts.output_path, std::ios::app | std::ios::binary);
  std::ofstream hits(hits_path, std::ios::app | std::ios::binary);
  if (!out || !hits) throw IoError("cannot open output files for append");

  const std::uint64_t start = cp.cursor;
  const std::uint64_t remaining = grid.size() - start;
  const std::uint64_t nblocks = (remaining + opts.block_size - 1) / opts.block_size;
  const std::uint64_t window = 4ull * opts.jobs + 4;

  std::mutex mu;
  std::condition_variable cv;
  std::map<std::uint64_t, detail::BlockResult> pending;
  std::uint64_t next_commit = 0;
  std::uint64_t committed_this_run = 0;
  std::atomic<std::uint64_t> next_block{0};
  std::atomic<bool> stop{false};
  bool abandoned = false;
  std::exception_ptr failure;
  auto last_save = std::chrono::steady_clock::now();

  auto save = [&] {
    if (!opts.checkpoint_path.empty()) cp.save(opts.checkpoint_path);
    if (opts.on_progress) opts.on_progress(cp);
    last_save = std::chrono::steady_clock::now();
  };

  // Called with mu held.
  auto commit_ready = [&] {
    while (!stop) {
      auto it = pending.find(next_commit);
      if (it == pending.end()) break;
      detail::BlockResult& r = it->second;
      out << r.lines;
      hits << r.hit_lines;
      out.flush();
      hits.flush();
      if (!out || !hits) throw IoError("write to output failed");
      cp.output_bytes += r.lines.size();
      cp.hits_bytes += r.hit_lines.size();
      cp.counts += r.counts;
      cp.cursor = std::min<std::uint64_t>(start + (next_commit + 1) * opts.block_size, grid.size());
      summary.hits += r.hits;
      bool hit = r.hits > 0;
      pending.erase(it);
      ++next_commit;
      ++committed_this_run;
      if (hit && opts.stop_on_hit) {
        cp.stopped_on_hit = true;
        stop = true;
        break;
      }
      if (opts.abandon_after_blocks && committed_this_run >= *opts.abandon_after_blocks) {
        abandoned = true;
        stop = true;
        break;
      }
      if (std::chrono::steady_clock::now() - last_save >= opts.checkpoint_interval) save();
    }
    cv.notify_all();
  };

  auto worker = [&] {
    try {
      for (;;) {
        std::uint64_t blk = next_block.fetch_add(1);
        if (blk >= nblocks || stop) return;
        {
          std::unique_lock lock(mu);
          cv.wait(lock, [&] { return stop || blk < next_commit + window; });
          if (stop) return;
        }
        std::uint64_t begin = start + blk * opts.block_size;
        std::uint64_t end = std::min<std::uint64_t>(begin + opts.block_size, grid.size());
        detail::BlockResult r = detail::run_block(grid, begin, end, space.e21_form);
        std::lock_guard lock(mu);
        pending.emplace(blk, std::move(r));
        commit_ready();
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      stop = true;
      cv.notify_all();
    }
  };

  {
    std::vector<std::jthread> pool;
    unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(opts.jobs, std::max<std::uint64_t>(nblocks, 1)));
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  if (!abandoned) {
    cp.complete = !cp.stopped_on_hit && cp.cursor == grid.size();
    save();
  }
  summary.counts = cp.counts;
  summary.visited = cp.cursor;
  summary.complete = cp.complete;
  summary.stopped_on_hit = cp.stopped_on_hit;
  summary.hits = cp.counts.level[6];
  return summary;
}

// Points whose level differs between two runs where either run reached
// level 5 or beyond. Records below level 1 are not logged, so a point
// missing from one side counts as level 0 there.
struct FormDiscrepancy {
  Params params;
  int level_a = 0;
  int level_b = 0;
};

inline std::vector<FormDiscrepancy> high_level_discrepancies(const std::vector<SearchRecord>& a,
                                                             const std::vector<SearchRecord>& b) {
  std::map<Params, std::pair<int, int>> levels;
  for (const auto& r : a) levels[r.params].first = r.level;
  for (const auto& r : b) levels[r.params].second = r.level;
  std::vector<FormDiscrepancy> out;
  for (const auto& [p, lv] : levels)
    if (lv.first != lv.second && std::max(lv.first, lv.second) >= 5) out.push_back({p, lv.first, lv.second});
  return out;
}

}  // namespace cuboid
