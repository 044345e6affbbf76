#pragma once

// Debug rendering of a sweep step. Elements are emitted in a fixed order:
// wedge rays (<line>, right then left), the current unit circle, wavefront
// pieces (<path>, in angular order) and the case label (<text>).

#include "lfs/geometry.hpp"
#include "lfs/sweep_types.hpp"

#include <string>
#include <vector>

namespace lfs {

struct SvgArcPiece {
  Point from;
  Point to;
  bool circular = true; ///< false: straight segment
  double radius = 0.0;
};

struct SvgFrame {
  std::size_t start_index = 0;
  std::size_t step_index = 0;
  Wedge wedge;
  std::vector<SvgArcPiece> wavefront;
  Point circle_center = Point::Zero();
  double delta = 0.0;
  Metric metric = Metric::L2;
  StepCase step_case = StepCase::None;
};

/// Renders in sweep-frame coordinates (apex at the origin).
std::string render_svg(const SvgFrame& frame);

} // namespace lfs
