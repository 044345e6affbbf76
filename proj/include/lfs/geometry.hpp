#pragma once

// Planar primitives for L1 / L2 / LInf unit circles: distances, ray and
// circle intersections, tangent wedges and waves. Everything here is a pure
// function over small fixed-size Eigen vectors and is templated on the scalar.

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace lfs {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;

using Point = Vec2<double>;

enum class Metric { L1, L2, LInf };

inline std::string_view to_string(Metric m)
{
  switch (m) {
  case Metric::L1:
    return "l1";
  case Metric::L2:
    return "l2";
  case Metric::LInf:
    return "linf";
  }
  return "?";
}

inline std::optional<Metric> parse_metric(std::string_view s)
{
  if (s == "l1" || s == "L1")
    return Metric::L1;
  if (s == "l2" || s == "L2")
    return Metric::L2;
  if (s == "linf" || s == "LInf" || s == "Linf" || s == "inf")
    return Metric::LInf;
  return std::nullopt;
}

/// Relative tolerance for coincidence tests (scaled by delta or by the
/// magnitude of the compared quantities).
inline constexpr double kEpsilon = 1e-9;

/// Raised for degenerate inputs to a primitive, e.g. two unit circles with
/// identical centers or an angle query at the frame apex.
class GeometryError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

template <typename Scalar>
struct UnitCircle {
  Vec2<Scalar> center;
  Scalar radius;
  Metric metric;
};

/// Zero, one or two points; the result type of all intersection queries.
template <typename Scalar>
class PointPair {
public:
  void push(const Vec2<Scalar>& p) { pts_[count_++] = p; }
  int size() const { return count_; }
  bool empty() const { return count_ == 0; }
  const Vec2<Scalar>& operator[](int k) const { return pts_[k]; }
  const Vec2<Scalar>* begin() const { return pts_.data(); }
  const Vec2<Scalar>* end() const { return pts_.data() + count_; }

private:
  std::array<Vec2<Scalar>, 2> pts_{};
  int count_ = 0;
};

// ---------------------------------------------------------------------------
// Angles

inline double normalize_angle(double a)
{
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi)
    a += two_pi;
  else if (a > std::numbers::pi)
    a -= two_pi;
  return a;
}

template <typename Scalar = double>
Vec2<Scalar> unit_vector(Scalar angle)
{
  return Vec2<Scalar>(std::cos(angle), std::sin(angle));
}

template <typename Scalar>
Scalar cross(const Vec2<Scalar>& a, const Vec2<Scalar>& b)
{
  return a.x() * b.y() - a.y() * b.x();
}

// ---------------------------------------------------------------------------
// Norms

template <typename Scalar>
Scalar lp_norm(const Vec2<Scalar>& v, Metric m)
{
  using std::abs;
  switch (m) {
  case Metric::L1:
    return abs(v.x()) + abs(v.y());
  case Metric::L2:
    return v.norm();
  case Metric::LInf:
    return std::max(abs(v.x()), abs(v.y()));
  }
  return v.norm();
}

template <typename Scalar>
Scalar lp_distance(const Vec2<Scalar>& p, const Vec2<Scalar>& q, Metric m)
{
  return lp_norm<Scalar>(q - p, m);
}

/// Linear change of coordinates under which the L1 norm becomes the LInf
/// norm: |x| + |y| = max(|x + y|, |y - x|). Orientation preserving.
template <typename Scalar>
Vec2<Scalar> l1_to_linf(const Vec2<Scalar>& p)
{
  return Vec2<Scalar>(p.x() + p.y(), p.y() - p.x());
}

template <typename Scalar>
Vec2<Scalar> linf_to_l1(const Vec2<Scalar>& q)
{
  return Vec2<Scalar>((q.x() - q.y()) / 2, (q.x() + q.y()) / 2);
}

/// Corners of a square unit circle (L1 diamond or LInf box), counter-clockwise.
template <typename Scalar>
std::array<Vec2<Scalar>, 4> square_corners(const UnitCircle<Scalar>& c)
{
  const Scalar r = c.radius;
  const Vec2<Scalar>& o = c.center;
  if (c.metric == Metric::L1)
    return {o + Vec2<Scalar>(r, 0), o + Vec2<Scalar>(0, r), o + Vec2<Scalar>(-r, 0),
            o + Vec2<Scalar>(0, -r)};
  return {o + Vec2<Scalar>(r, -r), o + Vec2<Scalar>(r, r), o + Vec2<Scalar>(-r, r),
          o + Vec2<Scalar>(-r, -r)};
}

// ---------------------------------------------------------------------------
// Rays

/// Parameter span [t_in, t_out] over which the line origin + t * dir lies in
/// the closed ball. `dir` must be a unit vector for L2; t_in may be negative
/// when the origin is inside the ball. Near-tangent lines are snapped to a
/// single touching parameter.
template <typename Scalar>
std::optional<std::pair<Scalar, Scalar>> line_ball_span(const Vec2<Scalar>& origin,
                                                        const Vec2<Scalar>& dir,
                                                        const UnitCircle<Scalar>& c)
{
  using std::abs;
  using std::sqrt;
  const Scalar r = c.radius;
  switch (c.metric) {
  case Metric::L2: {
    const Vec2<Scalar> rel = c.center - origin;
    const Scalar along = dir.dot(rel);
    const Scalar off = cross<Scalar>(dir, rel);
    Scalar h2 = r * r - off * off;
    if (h2 < 0) {
      if (h2 < -Scalar(kEpsilon) * r * r)
        return std::nullopt;
      h2 = 0;
    }
    const Scalar h = sqrt(h2);
    return std::make_pair(along - h, along + h);
  }
  case Metric::LInf: {
    Scalar lo = -std::numeric_limits<Scalar>::infinity();
    Scalar hi = std::numeric_limits<Scalar>::infinity();
    for (int a = 0; a < 2; ++a) {
      const Scalar lower = c.center[a] - r - origin[a];
      const Scalar upper = c.center[a] + r - origin[a];
      if (dir[a] == 0) {
        if (lower > Scalar(kEpsilon) * r || upper < -Scalar(kEpsilon) * r)
          return std::nullopt;
        continue;
      }
      Scalar t1 = lower / dir[a];
      Scalar t2 = upper / dir[a];
      if (t1 > t2)
        std::swap(t1, t2);
      lo = std::max(lo, t1);
      hi = std::min(hi, t2);
    }
    if (lo > hi) {
      if (lo - hi > Scalar(kEpsilon) * r)
        return std::nullopt;
      const Scalar mid = (lo + hi) / 2;
      lo = hi = mid;
    }
    return std::make_pair(lo, hi);
  }
  case Metric::L1: {
    // The linear map scales lengths but keeps the ray parameter.
    const UnitCircle<Scalar> box{l1_to_linf(c.center), r, Metric::LInf};
    return line_ball_span<Scalar>(l1_to_linf(origin), l1_to_linf(dir), box);
  }
  }
  return std::nullopt;
}

/// A ray in the plane; `angle` is measured in whatever frame `origin` and
/// the queried circles are expressed in.
struct Ray {
  Point origin;
  double angle = 0.0;

  Point direction() const { return unit_vector(angle); }
  Point at(double t) const { return origin + t * direction(); }
};

/// Boundary points of `c` hit by the ray, ordered near to far. A tangent ray
/// yields two coincident points; an origin strictly inside yields the exit
/// point only.
template <typename Scalar>
PointPair<Scalar> ray_circle_intersections(const Vec2<Scalar>& origin, Scalar angle,
                                           const UnitCircle<Scalar>& c)
{
  PointPair<Scalar> out;
  const Vec2<Scalar> dir = unit_vector<Scalar>(angle);
  const auto span = line_ball_span<Scalar>(origin, dir, c);
  if (!span)
    return out;
  const auto [t_in, t_out] = *span;
  if (t_out < 0)
    return out;
  if (t_in < 0) {
    out.push(origin + t_out * dir);
    return out;
  }
  out.push(origin + t_in * dir);
  out.push(origin + t_out * dir);
  return out;
}

inline PointPair<double> ray_circle_intersections(const Ray& r, const UnitCircle<double>& c)
{
  return ray_circle_intersections<double>(r.origin, r.angle, c);
}

// ---------------------------------------------------------------------------
// Circle / circle

namespace detail {

template <typename Scalar>
void push_unique(std::array<Vec2<Scalar>, 16>& pts, int& n, const Vec2<Scalar>& p, Scalar tol)
{
  for (int k = 0; k < n; ++k)
    if ((pts[k] - p).template lpNorm<Eigen::Infinity>() <= tol)
      return;
  pts[n++] = p;
}

/// All boundary/boundary contact points of two axis-aligned boxes of equal
/// half-size; overlapping edges contribute their overlap endpoints.
template <typename Scalar>
PointPair<Scalar> box_box_intersections(const Vec2<Scalar>& a, const Vec2<Scalar>& b, Scalar r)
{
  using std::abs;
  const Scalar tol = Scalar(kEpsilon) * r;
  struct Edge {
    int axis;     // 0: horizontal (constant y), 1: vertical (constant x)
    Scalar level; // the constant coordinate
    Scalar lo, hi;
  };
  auto edges = [r](const Vec2<Scalar>& c) {
    return std::array<Edge, 4>{Edge{0, c.y() - r, c.x() - r, c.x() + r},
                               Edge{0, c.y() + r, c.x() - r, c.x() + r},
                               Edge{1, c.x() - r, c.y() - r, c.y() + r},
                               Edge{1, c.x() + r, c.y() - r, c.y() + r}};
  };
  auto make = [](int axis, Scalar level, Scalar along) {
    return axis == 0 ? Vec2<Scalar>(along, level) : Vec2<Scalar>(level, along);
  };

  std::array<Vec2<Scalar>, 16> found;
  int n = 0;
  for (const Edge& e : edges(a)) {
    for (const Edge& f : edges(b)) {
      if (e.axis == f.axis) {
        if (abs(e.level - f.level) > tol)
          continue;
        const Scalar lo = std::max(e.lo, f.lo);
        const Scalar hi = std::min(e.hi, f.hi);
        if (lo > hi + tol)
          continue;
        push_unique(found, n, make(e.axis, e.level, lo), tol);
        push_unique(found, n, make(e.axis, e.level, std::max(lo, hi)), tol);
      } else {
        // e at constant coordinate `level` along its own axis
        if (f.level < e.lo - tol || f.level > e.hi + tol)
          continue;
        if (e.level < f.lo - tol || e.level > f.hi + tol)
          continue;
        push_unique(found, n, make(e.axis, e.level, f.level), tol);
      }
    }
  }

  PointPair<Scalar> out;
  if (n == 0)
    return out;
  auto lex = [](const Vec2<Scalar>& p, const Vec2<Scalar>& q) {
    return p.x() < q.x() || (p.x() == q.x() && p.y() < q.y());
  };
  auto [lo_it, hi_it] = std::minmax_element(found.begin(), found.begin() + n, lex);
  out.push(*lo_it);
  if (n > 1)
    out.push(*hi_it);
  return out;
}

} // namespace detail

/// Boundary intersection points of two equal-radius unit circles of the same
/// metric. A touching point is reported once. For square circles whose
/// boundaries share segments, the lexicographically extreme contact points
/// are returned.
template <typename Scalar>
PointPair<Scalar> circle_circle_intersections(const UnitCircle<Scalar>& a,
                                              const UnitCircle<Scalar>& b)
{
  using std::sqrt;
  if (a.metric != b.metric || a.radius != b.radius)
    throw GeometryError("circle_circle_intersections: circles must share metric and radius");
  if (a.center == b.center)
    throw GeometryError("circle_circle_intersections: coincident centers");

  const Scalar r = a.radius;
  PointPair<Scalar> out;
  switch (a.metric) {
  case Metric::L2: {
    const Vec2<Scalar> ab = b.center - a.center;
    const Scalar d = ab.norm();
    const Scalar slack = 2 * r - d;
    if (slack < -Scalar(kEpsilon) * r)
      return out;
    const Vec2<Scalar> mid = (a.center + b.center) / 2;
    const Scalar h2 = r * r - d * d / 4;
    if (slack <= Scalar(kEpsilon) * r || h2 <= 0) {
      out.push(mid);
      return out;
    }
    const Vec2<Scalar> perp = Vec2<Scalar>(-ab.y(), ab.x()) / d;
    const Scalar h = sqrt(h2);
    out.push(mid + h * perp);
    out.push(mid - h * perp);
    return out;
  }
  case Metric::LInf:
    return detail::box_box_intersections<Scalar>(a.center, b.center, r);
  case Metric::L1: {
    const auto hits =
        detail::box_box_intersections<Scalar>(l1_to_linf(a.center), l1_to_linf(b.center), r);
    for (const auto& p : hits)
      out.push(linf_to_l1(p));
    return out;
  }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Angular frame, local wedge and wave

/// Polar frame around a sweep apex. Angles are measured counter-clockwise
/// after rotating the plane by -rotation about the apex.
struct AngularFrame {
  Point apex = Point::Zero();
  double rotation = 0.0;

  /// Coordinates relative to the apex in the rotated frame.
  Point to_local(const Point& p) const
  {
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    const Point v = p - apex;
    return Point(c * v.x() + s * v.y(), -s * v.x() + c * v.y());
  }

  Point to_world(const Point& q) const
  {
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    return apex + Point(c * q.x() - s * q.y(), s * q.x() + c * q.y());
  }

  /// Frame whose +y axis points from `apex` towards `toward`.
  static AngularFrame facing(const Point& apex, const Point& toward)
  {
    const Point v = toward - apex;
    return AngularFrame{apex, std::atan2(v.y(), v.x()) - std::numbers::pi / 2};
  }
};

/// Angle of apex->p in the frame, in (-pi, pi].
inline double angle_in_frame(const AngularFrame& frame, const Point& p)
{
  if (p == frame.apex)
    throw GeometryError("angle_in_frame: point coincides with the apex");
  const Point q = frame.to_local(p);
  return std::atan2(q.y(), q.x());
}

/// Cone at the apex between the two tangent rays of a unit circle, or the
/// whole plane when the apex lies inside the (closed) circle.
struct LocalWedge {
  bool whole_plane = false;
  double left_angle = 0.0;  ///< frame angle of the counter-clockwise tangent ray
  double right_angle = 0.0; ///< frame angle of the clockwise tangent ray
  Point left_tangent = Point::Zero();
  Point right_tangent = Point::Zero();
  UnitCircle<double> circle{Point::Zero(), 1.0, Metric::L2};
  AngularFrame frame;
};

/// The right angle lies in (-pi, pi] around the center direction; the left
/// angle is right + opening and may exceed pi.
inline LocalWedge local_wedge(const Point& apex, const Point& center, double delta, Metric m,
                              const AngularFrame& frame)
{
  LocalWedge w;
  w.circle = UnitCircle<double>{center, delta, m};
  w.frame = frame;
  if (lp_distance<double>(apex, center, m) <= delta) {
    w.whole_plane = true;
    return w;
  }
  const AngularFrame at_apex{apex, frame.rotation};
  const double phi = angle_in_frame(at_apex, center);
  const Point v = center - apex;
  if (m == Metric::L2) {
    const double dist = v.norm();
    const double half = std::asin(std::min(1.0, delta / dist));
    const double reach = std::sqrt(std::max(0.0, dist * dist - delta * delta));
    const double psi = std::atan2(v.y(), v.x());
    w.left_angle = phi + half;
    w.right_angle = phi - half;
    w.left_tangent = apex + reach * unit_vector(psi + half);
    w.right_tangent = apex + reach * unit_vector(psi - half);
    return w;
  }
  // Squares: the tangent rays pass through the angularly extreme corners.
  const double psi = std::atan2(v.y(), v.x());
  double best_left = -10.0, best_right = 10.0;
  for (const Point& corner : square_corners(w.circle)) {
    const Point cv = corner - apex;
    const double rel = normalize_angle(std::atan2(cv.y(), cv.x()) - psi);
    const double dist = cv.norm();
    const double tie = kEpsilon;
    if (rel > best_left + tie ||
        (std::abs(rel - best_left) <= tie && dist < (w.left_tangent - apex).norm())) {
      best_left = rel;
      w.left_tangent = corner;
    }
    if (rel < best_right - tie ||
        (std::abs(rel - best_right) <= tie && dist < (w.right_tangent - apex).norm())) {
      best_right = rel;
      w.right_tangent = corner;
    }
  }
  w.left_angle = phi + best_left;
  w.right_angle = phi + best_right;
  return w;
}

/// Bottom arc of a unit circle between its tangent points, seen from the
/// apex; empty for a whole-plane local wedge.
struct Wave {
  bool empty = true;
  UnitCircle<double> circle{Point::Zero(), 1.0, Metric::L2};
  AngularFrame frame;
  double start_angle = 0.0; ///< right end (smaller frame angle)
  double end_angle = 0.0;   ///< left end
  Point start = Point::Zero();
  Point end = Point::Zero();
  /// Interior corner of a square wave (the corner nearest to the apex), if
  /// the wave consists of two segments.
  std::optional<Point> corner;

  /// Point of the wave on the frame ray at `angle` (the ray's entry point
  /// into the circle). Requires start_angle <= angle <= end_angle.
  Point point_at(double angle) const
  {
    const double world = angle + frame.rotation;
    const Point dir = unit_vector(world);
    const auto span = line_ball_span<double>(frame.apex, dir, circle);
    if (!span)
      throw GeometryError("Wave::point_at: ray misses the circle");
    return frame.apex + std::max(0.0, span->first) * dir;
  }
};

inline Wave wave_of(const LocalWedge& w)
{
  Wave wave;
  wave.circle = w.circle;
  wave.frame = w.frame;
  if (w.whole_plane)
    return wave;
  wave.empty = false;
  wave.start_angle = w.right_angle;
  wave.end_angle = w.left_angle;
  wave.start = w.right_tangent;
  wave.end = w.left_tangent;
  if (w.circle.metric != Metric::L2) {
    const Point apex = w.frame.apex;
    const auto corners = square_corners(w.circle);
    const Point* nearest = &corners[0];
    for (const Point& c : corners)
      if ((c - apex).norm() < (*nearest - apex).norm())
        nearest = &c;
    const double tol = kEpsilon * w.circle.radius;
    if ((*nearest - wave.start).norm() > tol && (*nearest - wave.end).norm() > tol)
      wave.corner = *nearest;
  }
  return wave;
}

} // namespace lfs
