#pragma once

// Command-line front end: simplify | verify | bench | stats.
// Exit codes: 0 success, 1 unreadable input, 2 invalid configuration,
// 3 verification mismatch.

#include "lfs/geometry.hpp"
#include "lfs/simplify.hpp"
#include "lfs/sweep_types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lfs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitMismatch = 3;

struct RunConfig {
  std::string input;
  std::string output;
  double delta = 0.0;
  /// Unset: verify and bench cover all three metrics, the other commands
  /// use L2.
  std::optional<Metric> metric;
  Algorithm algo = Algorithm::Wavefront;
  std::uint64_t seed = 1;
  std::size_t count = 1000;
  /// 0: per-command default (30 for verify, 2000 for bench, 200 for the
  /// generated stats instance).
  std::size_t max_n = 0;
  unsigned threads = 1;
  std::string svg_debug_dir;
  Fault fault = Fault::None;
};

int cli_simplify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cli_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cli_bench(const RunConfig& config, std::ostream& out, std::ostream& err);
int cli_stats(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and dispatches to the subcommands.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------------------
// Benchmark pieces, shared with the scaling tests

struct BenchRow {
  std::size_t n = 0;
  Algorithm algo = Algorithm::Wavefront;
  Metric metric = Metric::L2;
  double millis = 0.0; ///< minimum over repetitions
  std::size_t max_wavefront_size = 0;
};

/// Times simplify() on one random walk (delta = 1), subsampled to each size,
/// taking the minimum over at least `repetitions` runs and at least 250 ms
/// (at most 3 s) per size.
std::vector<BenchRow> run_benchmark(std::uint64_t seed, const std::vector<std::size_t>& sizes,
                                    const std::vector<Metric>& metrics,
                                    const std::vector<Algorithm>& algos, int repetitions);

/// Least-squares slope of log(millis) against log(n).
double fit_exponent(const std::vector<BenchRow>& rows);

/// Time ratios between consecutive sizes.
std::vector<double> doubling_ratios(const std::vector<BenchRow>& rows);

} // namespace lfs
