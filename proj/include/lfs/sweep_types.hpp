#pragma once

// Types shared by the L2 arc wavefront and the L1/LInf rectangle wavefront.

#include "lfs/geometry.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lfs {

/// Position of the wavefront crossing l (resp. r) on the left (right) wedge
/// ray relative to the two boundary crossings of the new unit circle:
/// T = above the circle, M = inside, B = below. The first letter is the left
/// ray, the second the right ray. TB and BT are geometrically impossible.
enum class StepCase : std::uint8_t { TB, TM, TT, MB, MM, MT, BB, BM, BT, None };

inline constexpr std::size_t kStepCaseCount = 10;

inline std::string_view to_string(StepCase c)
{
  constexpr std::array<std::string_view, kStepCaseCount> names{"TB", "TM", "TT", "MB", "MM",
                                                               "MT", "BB", "BM", "BT", "-"};
  return names[static_cast<std::size_t>(c)];
}

enum class Location { OutsideWedge, BelowWavefront, InValidRegion };

inline std::string_view to_string(Location l)
{
  switch (l) {
  case Location::OutsideWedge:
    return "outside-wedge";
  case Location::BelowWavefront:
    return "below-wavefront";
  case Location::InValidRegion:
    return "valid-region";
  }
  return "?";
}

/// A structural property of the sweep failed (impossible case reached, or an
/// invariant check under SweepOptions::check_invariants did not hold).
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

enum class WedgeState { WholePlane, Proper, Empty };

/// Angular region at the sweep apex, right_angle <= left_angle in the sweep
/// frame. All proper wedges lie inside (0, pi).
struct Wedge {
  WedgeState state = WedgeState::WholePlane;
  double right_angle = 0.0;
  double left_angle = 0.0;

  double width() const { return left_angle - right_angle; }
  Ray left_ray() const { return Ray{Point::Zero(), left_angle}; }
  Ray right_ray() const { return Ray{Point::Zero(), right_angle}; }
};

struct SweepStats {
  /// Largest wavefront size seen (arcs for L2, straight segments for L1/LInf).
  std::size_t max_arc_count = 0;
  std::array<std::size_t, kStepCaseCount> case_histogram{};
  std::size_t arcs_inserted = 0;
  std::size_t arcs_removed = 0;
  /// Steps where a crossing that must exist was not found numerically and a
  /// boundary ray was used instead.
  std::size_t numeric_fallbacks = 0;
};

/// Deliberate defects for exercising the verification harness.
enum class Fault {
  None,
  /// Skip the narrowing step for vertices within delta of the apex.
  SkipNearApexNarrowing,
};

/// Receives one SVG document per sweep step: (start index, step index, svg).
using SvgSink = std::function<void(std::size_t, std::size_t, const std::string&)>;

struct SweepOptions {
  /// Run the structural checks after every step and throw
  /// InvariantViolation on failure. Costs O(n) per step.
  bool check_invariants = false;
  SvgSink svg;
  Fault fault = Fault::None;
};

struct StepReport {
  StepCase step_case = StepCase::None;
  std::size_t removed_arcs = 0;
  /// Whether the vertex was tested against the valid region before the step.
  bool shortcut_candidate_checked = false;
};

/// Outcome of one full sweep from a start vertex.
struct SweepResult {
  std::vector<std::size_t> targets; ///< ascending indices k with a valid shortcut
  SweepStats stats;
  bool aborted = false;
};

} // namespace lfs
