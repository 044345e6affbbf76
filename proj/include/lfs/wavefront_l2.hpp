#pragma once

// Euclidean wedge/wavefront sweep. From a fixed start vertex p_i the
// remaining vertices are visited in order while maintaining
//  - the wedge: the cone at p_i containing every admissible shortcut
//    endpoint, narrowed so that the vertices can still be matched in order;
//  - the wavefront: the sequence of bottom arcs of unit circles that bounds
//    the valid region from below.
// A vertex p_j admits the shortcut <p_i, p_j> iff it lies in the valid region
// before p_j itself is processed. Every step costs amortized O(log n).
//
// All sweep geometry is expressed in the local frame of the sweep: the apex
// is the origin and the direction towards the first vertex farther than
// delta points along +y, so all wedge angles lie in (0, pi).

#include "lfs/geometry.hpp"
#include "lfs/polyline.hpp"
#include "lfs/sweep_types.hpp"

#include <cstddef>
#include <map>
#include <vector>

namespace lfs {

/// Piece of the bottom arc of the unit circle around vertex `circle`.
struct Arc {
  std::size_t circle = 0;
  Point center = Point::Zero(); ///< frame coordinates
  double start_angle = 0.0;     ///< right end
  double end_angle = 0.0;       ///< left end
  Point start_point = Point::Zero();
  Point end_point = Point::Zero();
};

/// Arcs ordered by start angle. The angular order of the arcs is the reverse
/// of the angular order of their circle centers, which allows locating a new
/// circle among the arcs by binary search on the center angle.
class Wavefront {
public:
  struct Key {
    double start_angle;
    double center_angle;
  };
  struct CenterProbe {
    double angle;
  };
  struct Order {
    using is_transparent = void;
    bool operator()(const Key& a, const Key& b) const { return a.start_angle < b.start_angle; }
    bool operator()(const Key& a, const CenterProbe& p) const { return a.center_angle > p.angle; }
    bool operator()(const CenterProbe& p, const Key& a) const { return p.angle > a.center_angle; }
  };
  using Map = std::map<Key, Arc, Order>;
  using iterator = Map::iterator;
  using const_iterator = Map::const_iterator;

  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }
  const_iterator begin() const { return arcs_.begin(); }
  const_iterator end() const { return arcs_.end(); }
  const Arc& front() const { return arcs_.begin()->second; }
  const Arc& back() const { return arcs_.rbegin()->second; }

  /// Arc whose angular span contains `angle` (clamped to the wavefront span).
  const Arc& arc_at(double angle) const;

  /// Distance from the apex to the wavefront along the frame ray `angle`.
  double radius_at(double angle, double delta) const;

  /// Arc list in angular order, for inspection and tests.
  std::vector<Arc> arcs() const;

private:
  friend class L2Sweep;
  Map arcs_;
};

struct SweepState {
  std::size_t apex_index = 0;
  double delta = 0.0;
  AngularFrame frame;
  Wedge wedge;
  Wavefront wavefront;
  SweepStats stats;
  bool aborted = false;
  SweepOptions options;

  // cached rotation of `frame`
  double cos_rot = 1.0;
  double sin_rot = 0.0;
  /// Frame coordinates of every circle center seen so far (only recorded
  /// when options.check_invariants is set).
  std::vector<Point> seen_centers;

  Point to_frame(const Point& world) const
  {
    const Point v = world - frame.apex;
    return Point(cos_rot * v.x() + sin_rot * v.y(), -sin_rot * v.x() + cos_rot * v.y());
  }
};

/// Fresh sweep from vertex i: whole-plane wedge, empty wavefront. The frame
/// is rotated so that the first vertex farther than delta from p_i lies on
/// the +y axis.
SweepState init_sweep(const Polyline& L, std::size_t i, double delta, SweepOptions options = {});

/// Classifies a world point against the current wedge and wavefront. Points
/// on a wedge ray or on the wavefront count as inside (closed region).
Location locate(const SweepState& state, const Point& p);

/// Processes vertex j: intersects the wedge with the local wedge of C_j,
/// clips the wavefront, then narrows the wedge to the part that can still
/// reach C_j in order and lifts the wavefront by the bottom arc of C_j.
StepReport step(SweepState& state, const Polyline& L, std::size_t j, double delta);

/// Full sweep from vertex i with statistics.
SweepResult sweep_from(const Polyline& L, std::size_t i, double delta,
                       const SweepOptions& options = {});

/// Ascending indices k > i such that <p_i, p_k> is a valid shortcut.
std::vector<std::size_t> shortcuts_from(const Polyline& L, std::size_t i, double delta);

} // namespace lfs
