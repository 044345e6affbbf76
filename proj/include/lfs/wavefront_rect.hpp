#pragma once

// Constant-size sweep for L1 and LInf. Unit circles are axis-parallel squares
// (L1 is handled as LInf after the map (x, y) -> (x + y, y - x)), and the
// region beyond the wavefront is an axis-parallel quadrant: each contributing
// square that does not contain the apex bounds one or both coordinates from
// the side facing the apex. Its boundary inside the wedge is one segment, or
// two orthogonal segments meeting at the quadrant corner.

#include "lfs/geometry.hpp"
#include "lfs/polyline.hpp"
#include "lfs/sweep_types.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace lfs {

/// One-sided bound on a coordinate of the (transformed, apex-relative) plane.
struct AxisBound {
  enum class Kind { None, Lower, Upper };
  Kind kind = Kind::None;
  double value = 0.0;
  std::size_t circle = 0; ///< vertex whose square set the bound
};

struct RectSegment {
  Point from; ///< world coordinates, right end
  Point to;   ///< world coordinates, left end
};

/// Quadrant {x >= a or x <= a} x {y >= b or y <= b} in apex-relative
/// coordinates of the square metric.
struct RectWavefront {
  std::array<AxisBound, 2> bound{};

  bool unbounded() const
  {
    return bound[0].kind == AxisBound::Kind::None && bound[1].kind == AxisBound::Kind::None;
  }
};

struct RectSweepState {
  std::size_t apex_index = 0;
  double delta = 0.0;
  Metric metric = Metric::LInf;
  Point apex = Point::Zero();
  /// Frame angles are measured in the square-metric plane after rotating by
  /// -rotation, so that the first vertex farther than delta lies on +y.
  double rotation = 0.0;
  Wedge wedge;
  RectWavefront wavefront;
  SweepStats stats;
  bool aborted = false;
  SweepOptions options;
  /// Transformed centers of all squares not containing the apex (only
  /// recorded when options.check_invariants is set).
  std::vector<Point> seen_centers;

  /// Apex-relative coordinates in the square-metric plane.
  Point to_square_plane(const Point& world) const;
  Point from_square_plane(const Point& q) const;
  /// Direction of the frame ray `angle` in the square-metric plane.
  Point direction(double angle) const;
  double angle_of(const Point& q) const;

  /// Wavefront pieces inside the current wedge (1 or 2; none for a
  /// whole-plane wedge).
  std::vector<RectSegment> segments() const;
  /// Corner where two segments meet, in world coordinates.
  std::optional<Point> corner() const;
};

RectSweepState rect_init_sweep(const Polyline& L, std::size_t i, double delta, Metric m,
                               SweepOptions options = {});

Location rect_locate(const RectSweepState& state, const Point& p);

StepReport rect_step(RectSweepState& state, const Polyline& L, std::size_t j, double delta);

SweepResult rect_sweep_from(const Polyline& L, std::size_t i, double delta, Metric m,
                            const SweepOptions& options = {});

std::vector<std::size_t> rect_shortcuts_from(const Polyline& L, std::size_t i, double delta,
                                             Metric m);

} // namespace lfs
