#pragma once

// Linear-time decision procedure for a single shortcut: is the Frechet
// distance between segment <p_i, p_k> and the subpolyline p_i..p_k at most
// delta? Serves as the Imai-Iri validity test and as the ground truth that
// the wavefront sweeps are checked against.

#include "lfs/geometry.hpp"
#include "lfs/polyline.hpp"

#include <cstddef>
#include <optional>

namespace lfs {

/// Closed parameter range [lo, hi] of a segment, 0 <= lo <= hi <= 1.
struct MatchInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Parameters t in [0, 1] with lp_distance(center, a + t (b - a)) <= delta.
/// Empty when the segment stays farther than delta from `center`.
std::optional<MatchInterval> ball_segment_interval(const Point& center, double delta, Metric m,
                                                   const Point& a, const Point& b);

/// Whether <L[i], L[k]> is a valid shortcut (0-based, i < k), i.e. the
/// intermediate vertices admit non-decreasing matching parameters on the
/// segment. Always scans all k - i - 1 intermediate vertices.
/// Throws std::out_of_range for bad indices.
bool shortcut_is_valid_oracle(const Polyline& L, std::size_t i, std::size_t k, double delta,
                              Metric m);

/// Brute-force shortcut list of vertex i: all k > i passing the oracle.
std::vector<std::size_t> oracle_shortcuts_from(const Polyline& L, std::size_t i, double delta,
                                               Metric m);

} // namespace lfs
