#include "lfs/simplify.hpp"

#include "lfs/frechet_oracle.hpp"
#include "lfs/wavefront_l2.hpp"
#include "lfs/wavefront_rect.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace lfs {

std::string_view to_string(Algorithm a)
{
  return a == Algorithm::Wavefront ? "wavefront" : "baseline";
}

std::optional<Algorithm> parse_algorithm(std::string_view s)
{
  if (s == "wavefront")
    return Algorithm::Wavefront;
  if (s == "baseline")
    return Algorithm::Baseline;
  return std::nullopt;
}

SweepResult shortcut_targets(const Polyline& L, std::size_t i, double delta, Metric m,
                             Algorithm algo, const SweepOptions& options)
{
  if (algo == Algorithm::Baseline) {
    SweepResult r;
    r.targets = oracle_shortcuts_from(L, i, delta, m);
    return r;
  }
  if (m == Metric::L2)
    return sweep_from(L, i, delta, options);
  return rect_sweep_from(L, i, delta, m, options);
}

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0)
{
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void record(SimplificationStats& stats, std::size_t i, const SweepResult& r)
{
  stats.sweep_wavefront_size[i] = r.stats.max_arc_count;
  stats.max_wavefront_size = std::max(stats.max_wavefront_size, r.stats.max_arc_count);
  stats.total_sweep_aborts += r.aborted ? 1 : 0;
  stats.numeric_fallbacks += r.stats.numeric_fallbacks;
  for (std::size_t c = 0; c < kStepCaseCount; ++c)
    stats.case_histogram[c] += r.stats.case_histogram[c];
}

/// Folds the targets of i into the table; the smallest minimizing j wins.
void relax(DistanceTable& t, std::size_t i, const std::vector<std::size_t>& targets)
{
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t j : targets) {
    if (t.d[j] < best) {
      best = t.d[j];
      t.next[i] = j;
    }
  }
  t.d[i] = best + 1;
}

std::vector<std::vector<std::size_t>> all_targets(const Polyline& L, double delta, Metric m,
                                                  Algorithm algo, const SimplifyOptions& options,
                                                  SimplificationStats& stats)
{
  const std::size_t n = L.size();
  std::vector<std::vector<std::size_t>> targets(n);
  std::vector<SweepResult> results(n);
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) + 1 < n;) {
      try {
        results[i] = shortcut_targets(L, i, delta, m, algo, options.sweep);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 0; k < options.threads; ++k)
    pool.emplace_back(worker);
  for (auto& t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    record(stats, i, results[i]);
    targets[i] = std::move(results[i].targets);
  }
  return targets;
}

} // namespace

SimplificationResult simplify(const Polyline& L, double delta, Metric m, Algorithm algo,
                              const SimplifyOptions& options)
{
  if (L.size() < 2)
    throw InvalidInput("polyline needs at least two vertices");
  if (!(delta > 0) || !std::isfinite(delta))
    throw InvalidInput("delta must be positive and finite");
  require_finite(L);

  SimplificationResult out;
  const auto t0 = Clock::now();
  const PreparedPolyline P = prepare(L);
  const Polyline& V = P.vertices;
  const std::size_t n = V.size();
  out.stats.prepare_millis = millis_since(t0);
  if (n == 1) {
    out.indices = {0, L.size() - 1};
    out.link_count = 1;
    out.table.d = {0};
    out.table.next = {0};
    out.stats.sweep_wavefront_size = {0};
    return out;
  }

  const auto t1 = Clock::now();
  DistanceTable& t = out.table;
  t.d.assign(n, 0);
  t.next.assign(n, n - 1);
  out.stats.sweep_wavefront_size.assign(n, 0);
  if (options.threads > 1) {
    const auto targets = all_targets(V, delta, m, algo, options, out.stats);
    for (std::size_t i = n - 1; i-- > 0;)
      relax(t, i, targets[i]);
  } else {
    for (std::size_t i = n - 1; i-- > 0;) {
      const SweepResult r = shortcut_targets(V, i, delta, m, algo, options.sweep);
      record(out.stats, i, r);
      relax(t, i, r.targets);
    }
  }
  out.stats.shortcut_millis = millis_since(t1);

  const auto t2 = Clock::now();
  for (std::size_t i = 0;; i = t.next[i]) {
    out.indices.push_back(P.original_index[i]);
    if (i == n - 1)
      break;
  }
  out.link_count = out.indices.size() - 1;
  out.stats.path_millis = millis_since(t2);
  return out;
}

SimplificationResult simplify_baseline(const Polyline& L, double delta, Metric m)
{
  return simplify(L, delta, m, Algorithm::Baseline);
}

NuDiagnostics nu_diagnostics(const Polyline& L, double delta, Metric m)
{
  NuDiagnostics out;
  const std::size_t n = L.size();
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t count = 0;
    for (std::size_t b = 0; b < n; ++b)
      count += lp_distance<double>(L[a], L[b], m) <= 2 * delta ? 1 : 0;
    out.max_vertices_in_delta_ball = std::max(out.max_vertices_in_delta_ball, count);
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double r = lp_distance<double>(L[a], L[b], m) / 2;
      if (r <= 0)
        continue;
      const Point mid = (L[a] + L[b]) / 2;
      std::size_t count = 0;
      for (std::size_t c = 0; c < n; ++c)
        count += lp_distance<double>(L[c], mid, m) <= r * (1 + kEpsilon) ? 1 : 0;
      out.nu_estimate = std::max(out.nu_estimate, count / (r * r));
    }
  }
  out.implied_wavefront_bound = std::max(out.nu_estimate * delta * delta, 1.0);
  return out;
}

} // namespace lfs
