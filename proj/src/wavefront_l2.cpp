#include "lfs/wavefront_l2.hpp"

#include "lfs/svg_debug.hpp"
#include "sweep_common.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

namespace lfs {

using detail::frame_angle;
using detail::RaySample;
using detail::Side;

namespace {

constexpr double kAngleTol = 1e-9;
constexpr int kSampledRays = 360;

/// Distance from the origin to the bottom arc of the circle along `angle`.
/// Rays grazing the circle are snapped to the tangent point.
double bottom_radius(const Point& c, double delta, double angle)
{
  const Point u = unit_vector(angle);
  const double along = u.dot(c);
  const double off = cross<double>(u, c);
  const double h2 = std::max(0.0, delta * delta - off * off);
  return std::max(0.0, along - std::sqrt(h2));
}

/// Entry/exit distances of the ray through the closed disk, entry clamped to
/// the origin when the origin is inside.
std::optional<std::pair<double, double>> disk_span(const Point& c, double delta, double angle)
{
  const auto span = line_ball_span<double>(Point::Zero(), unit_vector(angle),
                                           UnitCircle<double>{c, delta, Metric::L2});
  if (!span || span->second < 0)
    return std::nullopt;
  return std::make_pair(std::max(0.0, span->first), span->second);
}

double center_angle(const Point& c) { return frame_angle(c); }

Wavefront::Key key_of(const Arc& a) { return Wavefront::Key{a.start_angle, center_angle(a.center)}; }

enum class Part { Bottom, Top };

/// Crossings of an arc (piece of a bottom arc) with the given part of the
/// boundary of the circle around `c`, sorted by angle.
struct Crossings {
  int count = 0;
  std::array<double, 2> angle{};
  std::array<Point, 2> point{};

  void add(double a, const Point& p)
  {
    angle[count] = a;
    point[count] = p;
    ++count;
    if (count == 2 && angle[0] > angle[1]) {
      std::swap(angle[0], angle[1]);
      std::swap(point[0], point[1]);
    }
  }
};

Crossings crossings(const Arc& arc, const Point& c, double delta, Part part)
{
  Crossings out;
  if (arc.center == c)
    return out;
  const auto hits = circle_circle_intersections<double>(
      UnitCircle<double>{arc.center, delta, Metric::L2}, UnitCircle<double>{c, delta, Metric::L2});
  for (const Point& p : hits) {
    const double len = p.norm();
    if (len == 0.0)
      continue;
    const double a = frame_angle(p);
    if (a < arc.start_angle - kAngleTol || a > arc.end_angle + kAngleTol)
      continue;
    // the arc is a bottom arc: the ray enters its circle at p
    if ((p - arc.center).dot(p) / (delta * len) > kEpsilon)
      continue;
    const double side = (p - c).dot(p) / (delta * len);
    if (part == Part::Bottom && side > kEpsilon)
      continue;
    if (part == Part::Top && side < -kEpsilon)
      continue;
    out.add(std::clamp(a, arc.start_angle, arc.end_angle), p);
  }
  return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Wavefront

const Arc& Wavefront::arc_at(double angle) const
{
  auto it = arcs_.upper_bound(Key{angle, 0.0});
  if (it != arcs_.begin())
    --it;
  return it->second;
}

double Wavefront::radius_at(double angle, double delta) const
{
  const Arc& a = arc_at(angle);
  return bottom_radius(a.center, delta, std::clamp(angle, a.start_angle, a.end_angle));
}

std::vector<Arc> Wavefront::arcs() const
{
  std::vector<Arc> out;
  out.reserve(arcs_.size());
  for (const auto& [key, arc] : arcs_)
    out.push_back(arc);
  return out;
}

// ---------------------------------------------------------------------------
// Step machinery

class L2Sweep {
public:
  L2Sweep(SweepState& s, const Polyline& L, std::size_t j)
      : s_(s), arcs_(s.wavefront.arcs_), L_(L), j_(j), delta_(s.delta)
  {
  }

  StepReport run();

private:
  using It = Wavefront::iterator;

  Point tangent_point(double angle) const
  {
    const double reach = std::sqrt(std::max(0.0, c_.squaredNorm() - delta_ * delta_));
    return reach * unit_vector(angle);
  }

  /// Point of the bottom arc of C_j on the ray `angle`; the exact tangent
  /// points are used on the local wedge boundary.
  Point bottom_point(double angle) const
  {
    if (!whole_ && angle == phi_ - alpha_)
      return tangent_point(angle);
    if (!whole_ && angle == phi_ + alpha_)
      return tangent_point(angle);
    return bottom_radius(c_, delta_, angle) * unit_vector(angle);
  }

  Arc new_arc(double from, const Point& from_pt, double to, const Point& to_pt) const
  {
    return Arc{j_, c_, from, to, from_pt, to_pt};
  }

  void insert(const Arc& a)
  {
    const auto [it, ok] = arcs_.emplace(key_of(a), a);
    if (!ok)
      throw InvariantViolation("wavefront: duplicate arc start angle");
    ++s_.stats.arcs_inserted;
  }

  It erase(It it)
  {
    ++removed_;
    ++s_.stats.arcs_removed;
    return arcs_.erase(it);
  }

  /// Moves the start of an arc; the arc is dropped when it becomes empty.
  void set_start(It it, double angle, const Point& p)
  {
    if (angle >= it->second.end_angle) {
      erase(it);
      return;
    }
    auto node = arcs_.extract(it);
    node.key().start_angle = angle;
    node.mapped().start_angle = angle;
    node.mapped().start_point = p;
    arcs_.insert(std::move(node));
  }

  void set_end(It it, double angle, const Point& p)
  {
    if (angle <= it->second.start_angle) {
      erase(it);
      return;
    }
    it->second.end_angle = angle;
    it->second.end_point = p;
  }

  double wave_radius(double angle) const { return s_.wavefront.radius_at(angle, delta_); }

  std::optional<RaySample> sample(double angle) const
  {
    const auto span = disk_span(c_, delta_, angle);
    if (!span)
      return std::nullopt;
    return RaySample{wave_radius(angle), span->first, span->second};
  }

  Side side_at(double angle, double inward_sign) const;

  void clip_to(double right, double left);
  void check_crossing_count() const;
  void check_after(const Wavefront& before) const;
  void emit_svg(StepCase c) const;

  void abort_sweep()
  {
    s_.aborted = true;
    s_.wedge.state = WedgeState::Empty;
  }

  // case surgery
  void replace_all(double right, double left);
  void lift_from_right(double right, double left);
  void lift_from_left(double right, double left);
  void lift_middle();
  bool cut_left();
  bool cut_right();
  bool cut_both();

  SweepState& s_;
  Wavefront::Map& arcs_;
  const Polyline& L_;
  std::size_t j_;
  double delta_;

  Point c_ = Point::Zero();
  bool whole_ = false;
  double phi_ = 0.0;
  double alpha_ = 0.0;
  std::size_t removed_ = 0;
};

Side L2Sweep::side_at(double angle, double inward_sign) const
{
  const auto at = sample(angle);
  // the ray lies inside the local wedge, so it meets the disk; a miss is a
  // rounding artefact at the tangent and counts as touching
  const double g = wave_radius(angle);
  RaySample v = at ? *at : RaySample{g, g, g};
  const double tol = kEpsilon * (delta_ + g);
  return detail::classify_side(v, tol, [&]() -> std::optional<RaySample> {
    const double width = s_.wedge.width();
    if (width <= 0)
      return std::nullopt;
    return sample(angle + inward_sign * 1e-6 * width);
  });
}

void L2Sweep::clip_to(double right, double left)
{
  while (arcs_.size() > 1 && arcs_.begin()->second.end_angle <= right)
    erase(arcs_.begin());
  while (arcs_.size() > 1 && std::prev(arcs_.end())->second.start_angle >= left)
    erase(std::prev(arcs_.end()));

  auto first = arcs_.begin();
  if (first->second.start_angle < right) {
    const Point p = right == phi_ - alpha_ && !whole_
                        ? bottom_radius(first->second.center, delta_, right) * unit_vector(right)
                        : bottom_radius(first->second.center, delta_, right) * unit_vector(right);
    auto node = arcs_.extract(first);
    node.key().start_angle = right;
    node.mapped().start_angle = right;
    node.mapped().start_point = p;
    arcs_.insert(std::move(node));
  }
  auto last = std::prev(arcs_.end());
  if (last->second.end_angle > left) {
    last->second.end_angle = left;
    last->second.end_point = bottom_radius(last->second.center, delta_, left) * unit_vector(left);
  }
  // a single remaining arc may have collapsed
  auto only = arcs_.begin();
  if (only->second.start_angle > only->second.end_angle)
    only->second.end_angle = only->second.start_angle;
}

void L2Sweep::replace_all(double right, double left)
{
  while (!arcs_.empty())
    erase(arcs_.begin());
  insert(new_arc(right, bottom_point(right), left, bottom_point(left)));
}

// C_j is above the wavefront at the right ray and below it at the left ray:
// walk from the right removing covered arcs until the bottom crossing.
void L2Sweep::lift_from_right(double right, double left)
{
  It it = arcs_.begin();
  while (it != arcs_.end()) {
    const Crossings x = crossings(it->second, c_, delta_, Part::Bottom);
    if (x.count > 0) {
      const double a = x.angle[0];
      const Point p = x.point[0];
      set_start(it, a, p);
      if (a > right)
        insert(new_arc(right, bottom_point(right), a, p));
      return;
    }
    it = erase(it);
  }
  ++s_.stats.numeric_fallbacks;
  insert(new_arc(right, bottom_point(right), left, bottom_point(left)));
}

void L2Sweep::lift_from_left(double right, double left)
{
  while (!arcs_.empty()) {
    It it = std::prev(arcs_.end());
    const Crossings x = crossings(it->second, c_, delta_, Part::Bottom);
    if (x.count > 0) {
      const double a = x.angle[x.count - 1];
      const Point p = x.point[x.count - 1];
      set_end(it, a, p);
      if (a < left)
        insert(new_arc(a, p, left, bottom_point(left)));
      return;
    }
    erase(it);
  }
  ++s_.stats.numeric_fallbacks;
  insert(new_arc(right, bottom_point(right), left, bottom_point(left)));
}

// Wavefront inside C_j on both wedge rays. The bottom arc of C_j can only
// rise above the wavefront around the place where the center of C_j falls
// in the (reversed) angular order of the arc centers.
void L2Sweep::lift_middle()
{
  if (whole_)
    return;
  It upper = arcs_.lower_bound(Wavefront::CenterProbe{phi_});
  if (upper == arcs_.begin() || upper == arcs_.end())
    return;
  It lower = std::prev(upper);
  const double beta = upper->second.start_angle;
  const auto span = disk_span(c_, delta_, beta);
  const double g = upper->second.start_point.norm();
  if (!span || span->first <= g + kEpsilon * (delta_ + g))
    return;

  // right crossing: walk towards smaller angles
  double right_angle = s_.wedge.right_angle;
  Point right_point = bottom_point(right_angle);
  bool found = false;
  It it = lower;
  while (true) {
    const Crossings x = crossings(it->second, c_, delta_, Part::Bottom);
    if (x.count > 0) {
      right_angle = x.angle[x.count - 1];
      right_point = x.point[x.count - 1];
      set_end(it, right_angle, right_point);
      found = true;
      break;
    }
    const bool first = it == arcs_.begin();
    const It prev = first ? arcs_.end() : std::prev(it);
    erase(it);
    if (first)
      break;
    it = prev;
  }
  if (!found)
    ++s_.stats.numeric_fallbacks;

  double left_angle = s_.wedge.left_angle;
  Point left_point = bottom_point(left_angle);
  found = false;
  it = upper;
  while (it != arcs_.end()) {
    const Crossings x = crossings(it->second, c_, delta_, Part::Bottom);
    if (x.count > 0) {
      left_angle = x.angle[0];
      left_point = x.point[0];
      set_start(it, left_angle, left_point);
      found = true;
      break;
    }
    it = erase(it);
  }
  if (!found)
    ++s_.stats.numeric_fallbacks;
  if (left_angle > right_angle)
    insert(new_arc(right_angle, right_point, left_angle, left_point));
}

// Wavefront above C_j at the left ray: cut the wedge back to the top crossing.
bool L2Sweep::cut_left()
{
  while (!arcs_.empty()) {
    It it = std::prev(arcs_.end());
    const Crossings x = crossings(it->second, c_, delta_, Part::Top);
    if (x.count > 0) {
      set_end(it, x.angle[x.count - 1], x.point[x.count - 1]);
      return true;
    }
    erase(it);
  }
  return false;
}

bool L2Sweep::cut_right()
{
  while (!arcs_.empty()) {
    It it = arcs_.begin();
    const Crossings x = crossings(it->second, c_, delta_, Part::Top);
    if (x.count > 0) {
      set_start(it, x.angle[0], x.point[0]);
      return true;
    }
    erase(it);
  }
  return false;
}

// Wavefront above C_j on both rays: either C_j pokes through it twice with
// its top arc, or the valid region is gone.
bool L2Sweep::cut_both()
{
  It left_it = arcs_.end();
  double left_angle = 0.0;
  Point left_point;
  while (!arcs_.empty()) {
    It it = std::prev(arcs_.end());
    const Crossings x = crossings(it->second, c_, delta_, Part::Top);
    if (x.count > 0) {
      left_it = it;
      left_angle = x.angle[x.count - 1];
      left_point = x.point[x.count - 1];
      break;
    }
    erase(it);
  }
  if (left_it == arcs_.end())
    return false;

  It it = arcs_.begin();
  while (true) {
    const Crossings x = crossings(it->second, c_, delta_, Part::Top);
    if (it == left_it) {
      // the second crossing must lie strictly right of the first
      if (x.count == 0 || x.angle[0] >= left_angle - kAngleTol)
        return false;
      set_end(it, left_angle, left_point);
      set_start(it, x.angle[0], x.point[0]);
      return !arcs_.empty();
    }
    if (x.count > 0) {
      set_start(it, x.angle[0], x.point[0]);
      set_end(left_it, left_angle, left_point);
      return !arcs_.empty();
    }
    it = erase(it);
  }
}

StepReport L2Sweep::run()
{
  StepReport report;
  c_ = s_.to_frame(L_[j_]);
  const double dist = c_.norm();
  whole_ = dist <= delta_;
  if (!whole_) {
    phi_ = center_angle(c_);
    alpha_ = std::asin(std::min(1.0, delta_ / dist));
  }
  if (s_.options.check_invariants)
    s_.seen_centers.push_back(c_);

  if (s_.wedge.state == WedgeState::WholePlane) {
    if (whole_)
      return report;
    s_.wedge = Wedge{WedgeState::Proper, phi_ - alpha_, phi_ + alpha_};
    replace_all(phi_ - alpha_, phi_ + alpha_);
    report.step_case = StepCase::BB;
    ++s_.stats.case_histogram[static_cast<std::size_t>(report.step_case)];
    s_.stats.max_arc_count = std::max(s_.stats.max_arc_count, arcs_.size());
    emit_svg(report.step_case);
    return report;
  }

  // (a) intersect with the local wedge
  double right = s_.wedge.right_angle;
  double left = s_.wedge.left_angle;
  if (!whole_) {
    right = std::max(right, phi_ - alpha_);
    left = std::min(left, phi_ + alpha_);
    if (right > left) {
      abort_sweep();
      emit_svg(report.step_case);
      return report;
    }
  } else if (s_.options.fault == Fault::SkipNearApexNarrowing) {
    return report;
  }

  std::optional<Wavefront> before;
  if (s_.options.check_invariants)
    before = s_.wavefront;

  // (b) clip the wavefront to the intermediate wedge
  clip_to(right, left);
  s_.wedge.right_angle = right;
  s_.wedge.left_angle = left;

  // (c) classify and update
  const Side at_left = side_at(left, -1.0);
  const Side at_right = side_at(right, +1.0);
  report.step_case = detail::combine(at_left, at_right);
  if (s_.options.check_invariants)
    check_crossing_count();

  bool alive = true;
  switch (report.step_case) {
  case StepCase::TB:
  case StepCase::BT:
    throw InvariantViolation("wavefront update reached impossible case " +
                             std::string(to_string(report.step_case)));
  case StepCase::BB:
    replace_all(right, left);
    break;
  case StepCase::MB:
    lift_from_right(right, left);
    break;
  case StepCase::BM:
    lift_from_left(right, left);
    break;
  case StepCase::MM:
    lift_middle();
    break;
  case StepCase::TM:
    alive = cut_left();
    break;
  case StepCase::MT:
    alive = cut_right();
    break;
  case StepCase::TT:
    alive = cut_both();
    break;
  case StepCase::None:
    break;
  }
  ++s_.stats.case_histogram[static_cast<std::size_t>(report.step_case)];
  report.removed_arcs = removed_;

  if (!alive || arcs_.empty()) {
    abort_sweep();
    emit_svg(report.step_case);
    return report;
  }
  s_.wedge.right_angle = arcs_.begin()->second.start_angle;
  s_.wedge.left_angle = std::prev(arcs_.end())->second.end_angle;
  s_.stats.max_arc_count = std::max(s_.stats.max_arc_count, arcs_.size());

  if (s_.options.check_invariants)
    check_after(*before);
  emit_svg(report.step_case);
  return report;
}

// Any unit circle meets the wavefront at most twice.
void L2Sweep::check_crossing_count() const
{
  std::vector<double> angles;
  for (const auto& [key, arc] : arcs_) {
    for (Part part : {Part::Bottom, Part::Top}) {
      const Crossings x = crossings(arc, c_, delta_, part);
      for (int k = 0; k < x.count; ++k) {
        const bool seen = std::any_of(angles.begin(), angles.end(),
                                      [&](double a) { return std::abs(a - x.angle[k]) <= 1e-7; });
        if (!seen)
          angles.push_back(x.angle[k]);
      }
    }
  }
  if (angles.size() > 2) {
    std::ostringstream msg;
    msg << "circle " << j_ << " crosses the wavefront " << angles.size() << " times";
    throw InvariantViolation(msg.str());
  }
}

void L2Sweep::check_after(const Wavefront& before) const
{
  auto fail = [&](const std::string& what) {
    std::ostringstream msg;
    msg << "sweep " << s_.apex_index << " step " << j_ << ": " << what;
    throw InvariantViolation(msg.str());
  };
  const double tol = kEpsilon * delta_;

  // size bound: one arc per circle seen so far
  if (arcs_.size() > s_.seen_centers.size() || arcs_.size() + 1 > L_.size())
    fail("too many arcs");

  // arcs are consecutive, lie on their circles' bottom arcs and are inside
  // every contributing circle
  const Arc* prev = nullptr;
  double last_center_angle = std::numeric_limits<double>::infinity();
  for (const auto& [key, arc] : arcs_) {
    if (arc.start_angle > arc.end_angle)
      fail("inverted arc");
    if (prev && prev->end_angle != arc.start_angle)
      fail("gap between arcs");
    if (prev && (prev->end_point - arc.start_point).norm() > 1e3 * tol)
      fail("arc endpoints do not meet");
    const double ca = center_angle(arc.center);
    if (ca > last_center_angle)
      fail("arc order is not reverse to center order");
    last_center_angle = ca;
    for (const Point* p : {&arc.start_point, &arc.end_point})
      for (const auto& [k2, other] : arcs_)
        if ((*p - other.center).norm() > delta_ + tol)
          fail("wavefront point outside contributing circle " + std::to_string(other.circle));
    prev = &arc;
  }

  // sampled rays: one crossing each, at the lower envelope of all bottom
  // arcs seen so far, never closer to the apex than before
  const double right = s_.wedge.right_angle;
  const double width = s_.wedge.width();
  for (int k = 0; k < kSampledRays; ++k) {
    const double a = right + width * (k + 0.5) / kSampledRays;
    int hits = 0;
    for (const auto& [key, arc] : arcs_)
      if (a >= arc.start_angle && a < arc.end_angle)
        ++hits;
    if (width > 0 && hits != 1)
      fail("ray crosses the wavefront " + std::to_string(hits) + " times");
    const double g = s_.wavefront.radius_at(a, delta_);
    double envelope = 0.0;
    for (const Point& c : s_.seen_centers)
      envelope = std::max(envelope, bottom_radius(c, delta_, a));
    if (std::abs(g - envelope) > 1e-6 * delta_ * (1.0 + g))
      fail("wavefront differs from the envelope of bottom arcs");
    if (!before.empty() && g < before.radius_at(a, delta_) - 1e-6 * delta_ * (1.0 + g))
      fail("wavefront moved towards the apex");
  }
}

void L2Sweep::emit_svg(StepCase c) const
{
  if (!s_.options.svg)
    return;
  SvgFrame f;
  f.start_index = s_.apex_index;
  f.step_index = j_;
  f.wedge = s_.wedge;
  f.circle_center = c_;
  f.delta = delta_;
  f.metric = Metric::L2;
  f.step_case = c;
  for (const auto& [key, arc] : arcs_)
    f.wavefront.push_back(SvgArcPiece{arc.start_point, arc.end_point, true, delta_});
  s_.options.svg(s_.apex_index, j_, render_svg(f));
}

// ---------------------------------------------------------------------------
// Public entry points

SweepState init_sweep(const Polyline& L, std::size_t i, double delta, SweepOptions options)
{
  if (i + 1 >= L.size())
    throw std::out_of_range("init_sweep: start vertex has no successor");
  SweepState s;
  s.apex_index = i;
  s.delta = delta;
  s.options = std::move(options);
  s.frame = AngularFrame{L[i], 0.0};
  for (std::size_t k = i + 1; k < L.size(); ++k) {
    if ((L[k] - L[i]).norm() > delta) {
      s.frame = AngularFrame::facing(L[i], L[k]);
      break;
    }
  }
  s.cos_rot = std::cos(s.frame.rotation);
  s.sin_rot = std::sin(s.frame.rotation);
  return s;
}

Location locate(const SweepState& s, const Point& p)
{
  if (s.aborted)
    throw std::logic_error("locate: sweep was aborted");
  if (s.wedge.state == WedgeState::WholePlane)
    return Location::InValidRegion;
  const Point q = s.to_frame(p);
  const double len = q.norm();
  if (len == 0.0)
    return Location::BelowWavefront;
  const double a = frame_angle(q);
  if (a < s.wedge.right_angle - kAngleTol || a > s.wedge.left_angle + kAngleTol)
    return Location::OutsideWedge;
  const double g =
      s.wavefront.radius_at(std::clamp(a, s.wedge.right_angle, s.wedge.left_angle), s.delta);
  return len >= g - kEpsilon * (s.delta + g) ? Location::InValidRegion : Location::BelowWavefront;
}

StepReport step(SweepState& state, const Polyline& L, std::size_t j, double delta)
{
  if (state.aborted)
    throw std::logic_error("step: sweep was aborted");
  if (j <= state.apex_index || j >= L.size())
    throw std::out_of_range("step: vertex index out of range");
  if (delta != state.delta)
    throw std::invalid_argument("step: delta differs from the sweep's delta");
  return L2Sweep(state, L, j).run();
}

SweepResult sweep_from(const Polyline& L, std::size_t i, double delta, const SweepOptions& options)
{
  SweepResult out;
  SweepState s = init_sweep(L, i, delta, options);
  for (std::size_t j = i + 1; j < L.size(); ++j) {
    if (locate(s, L[j]) == Location::InValidRegion)
      out.targets.push_back(j);
    step(s, L, j, delta);
    if (s.aborted)
      break;
  }
  out.stats = s.stats;
  out.aborted = s.aborted;
  return out;
}

std::vector<std::size_t> shortcuts_from(const Polyline& L, std::size_t i, double delta)
{
  return sweep_from(L, i, delta).targets;
}

} // namespace lfs
