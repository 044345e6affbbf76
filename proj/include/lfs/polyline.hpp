#pragma once

#include "lfs/geometry.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace lfs {

using Polyline = std::vector<Point>;

/// Input rejected before any computation (too short, non-finite, bad delta).
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A polyline with exact consecutive duplicates collapsed, plus the index of
/// each kept vertex in the original sequence.
struct PreparedPolyline {
  Polyline vertices;
  std::vector<std::size_t> original_index;
};

/// Throws InvalidInput on non-finite coordinates.
void require_finite(const Polyline& L);

/// Collapses runs of identical consecutive vertices. Each run maps to its
/// first original index, except the final run, which maps to the last
/// original index so that both endpoints are preserved.
PreparedPolyline prepare(const Polyline& L);

} // namespace lfs
