#pragma once

// Pieces shared by the two sweep implementations.

#include "lfs/geometry.hpp"
#include "lfs/sweep_types.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace lfs::detail {

enum class Side { Top, Middle, Bottom };

/// Frame angle of a local point, on the branch (-pi/2, 3pi/2] so that
/// wedges around +y never wrap.
inline double frame_angle(const Point& q)
{
  double a = std::atan2(q.y(), q.x());
  if (a <= -std::numbers::pi / 2)
    a += 2 * std::numbers::pi;
  return a;
}

inline double frame_angle_of(double raw)
{
  double a = normalize_angle(raw);
  if (a <= -std::numbers::pi / 2)
    a += 2 * std::numbers::pi;
  return a;
}

/// Wavefront distance and circle span on one ray.
struct RaySample {
  double wave;
  double lo;
  double hi;
};

/// Where the wavefront crossing sits relative to the circle on a boundary
/// ray. Coincidences are resolved by re-evaluating slightly inside the wedge
/// (`inward`), which amounts to moving the ray infinitesimally inwards. A
/// wavefront point that coincides with a touching ray counts as inside.
template <typename Inward>
Side classify_side(const RaySample& at, double tol, Inward&& inward)
{
  const bool touching = at.hi - at.lo <= tol;
  const bool near_hi = std::abs(at.wave - at.hi) <= tol;
  const bool near_lo = std::abs(at.wave - at.lo) <= tol;
  if (touching && (near_hi || near_lo))
    return Side::Middle;
  if (!near_hi && at.wave > at.hi)
    return Side::Top;
  if (!near_lo && at.wave < at.lo)
    return Side::Bottom;
  if (!near_hi && !near_lo)
    return Side::Middle;
  const std::optional<RaySample> in = inward();
  if (!in)
    return Side::Middle;
  if (in->wave > in->hi)
    return Side::Top;
  if (in->wave < in->lo)
    return Side::Bottom;
  return Side::Middle;
}

inline StepCase combine(Side left, Side right)
{
  constexpr StepCase table[3][3] = {
      {StepCase::TT, StepCase::TM, StepCase::TB},
      {StepCase::MT, StepCase::MM, StepCase::MB},
      {StepCase::BT, StepCase::BM, StepCase::BB},
  };
  return table[static_cast<int>(left)][static_cast<int>(right)];
}

} // namespace lfs::detail
