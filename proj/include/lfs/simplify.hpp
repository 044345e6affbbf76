#pragma once

// Minimum-link simplification under the local Frechet distance. Vertices are
// processed from the back; the shortcut list of each start vertex is folded
// into the link-distance table as soon as it is produced, so only O(n)
// memory is used. The baseline decides every pair with the linear-time
// oracle (O(n^3) in total).

#include "lfs/geometry.hpp"
#include "lfs/polyline.hpp"
#include "lfs/sweep_types.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace lfs {

enum class Algorithm { Wavefront, Baseline };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view s);

/// Link distances to the last vertex and the chosen successor of every
/// vertex of the prepared polyline.
struct DistanceTable {
  std::vector<std::size_t> d;
  std::vector<std::size_t> next;
};

struct SimplificationStats {
  /// Largest wavefront over all sweeps (arcs for L2, segments otherwise);
  /// zero for the baseline.
  std::size_t max_wavefront_size = 0;
  /// Largest wavefront of each sweep, indexed by prepared start vertex.
  std::vector<std::size_t> sweep_wavefront_size;
  std::size_t total_sweep_aborts = 0;
  std::array<std::size_t, kStepCaseCount> case_histogram{};
  std::size_t numeric_fallbacks = 0;
  double prepare_millis = 0.0;
  double shortcut_millis = 0.0;
  double path_millis = 0.0;
};

struct SimplificationResult {
  /// Kept vertices as strictly increasing indices into the input, starting
  /// at 0 and ending at n - 1.
  std::vector<std::size_t> indices;
  std::size_t link_count = 0;
  SimplificationStats stats;
  DistanceTable table; ///< over the prepared polyline
};

struct SimplifyOptions {
  /// Values > 1 switch to the two-pass mode that stores all shortcut lists
  /// and runs the sweeps on that many threads.
  unsigned threads = 1;
  SweepOptions sweep;
};

/// Shortcut targets of start vertex i, computed with the sweep matching the
/// metric (or the oracle for the baseline).
SweepResult shortcut_targets(const Polyline& L, std::size_t i, double delta, Metric m,
                             Algorithm algo, const SweepOptions& options = {});

/// Throws InvalidInput for fewer than two vertices, non-finite coordinates
/// or delta not positive and finite. InvariantViolation propagates from the
/// sweeps.
SimplificationResult simplify(const Polyline& L, double delta, Metric m,
                              Algorithm algo = Algorithm::Wavefront,
                              const SimplifyOptions& options = {});

SimplificationResult simplify_baseline(const Polyline& L, double delta, Metric m);

struct NuDiagnostics {
  /// Most vertices within 2 delta of a single vertex.
  std::size_t max_vertices_in_delta_ball = 0;
  /// Wavefront size bound implied by the estimate: max(nu delta^2, 1).
  double implied_wavefront_bound = 0.0;
  /// Lower estimate of the smallest nu: over all vertex pairs, vertices in
  /// the ball of radius r = d/2 around their midpoint, divided by r^2.
  double nu_estimate = 0.0;
};

/// O(n^3) diagnostic.
NuDiagnostics nu_diagnostics(const Polyline& L, double delta, Metric m);

} // namespace lfs
