#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace rumourlens {

// ---------------------------------------------------------------------------
// strings

std::string to_lower_ascii(std::string_view s);
std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
bool is_blank(std::string_view s);

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
// Fixed-point rendering for human-facing tables.
std::string format_fixed(double v, int digits);
std::optional<double> parse_double(std::string_view s);

// Reads a whole file; throws Error{IoError}.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// Non-empty lines with '#' comments stripped and whitespace trimmed.
std::vector<std::string> read_word_list(const std::filesystem::path& path);

// 64-bit FNV-1a, raw and hex-encoded.
std::uint64_t fnv1a(std::string_view data);
std::string fnv1a_hex(std::string_view data);

// ---------------------------------------------------------------------------
// csv

std::string csv_escape(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);
// Splits one CSV record; supports quoted fields with doubled quotes.
std::vector<std::string> csv_parse_line(std::string_view line);

// ---------------------------------------------------------------------------
// randomness

// Mixes (seed, stream) into an independent 64-bit seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Portable wrapper: the engine is fully specified by the standard, and the
// bounded draws below avoid implementation-defined distributions so that
// outputs are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n); n > 0.
  std::size_t index(std::size_t n);
  // Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// parallelism

unsigned default_thread_count();

// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception
// thrown by any task is rethrown on the caller after all workers join.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (n == 0) return;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// diagnostics

// Non-fatal conditions (reduced fold count, skipped events, ...). The default
// sink writes "warning: <msg>" to stderr.
using WarningSink = std::function<void(std::string_view)>;
void set_warning_sink(WarningSink sink);
void warn(std::string_view message);

// ---------------------------------------------------------------------------
// small numerics

double mean(std::span<const double> xs);
// Sample standard deviation (n-1); 0 for fewer than two values.
double stddev(std::span<const double> xs);
double median(std::vector<double> xs);

}  // namespace rumourlens
