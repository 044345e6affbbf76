#include "lfs/wavefront_rect.hpp"

#include "lfs/svg_debug.hpp"
#include "sweep_common.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace lfs {

using detail::RaySample;
using detail::Side;
using Kind = AxisBound::Kind;

namespace {

constexpr double kAngleTol = 1e-9;
constexpr int kSampledRays = 360;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Bounds induced by a square that does not contain the apex: the region
/// beyond its near side(s).
RectWavefront quadrant_of(const Point& c, double delta, std::size_t j)
{
  RectWavefront q;
  for (int a = 0; a < 2; ++a) {
    if (c[a] - delta > 0)
      q.bound[a] = AxisBound{Kind::Lower, c[a] - delta, j};
    else if (c[a] + delta < 0)
      q.bound[a] = AxisBound{Kind::Upper, c[a] + delta, j};
  }
  return q;
}

/// Distance along `dir` (from the apex) at which the ray enters the quadrant.
double entry(const RectWavefront& q, const Point& dir)
{
  double t = 0.0;
  for (int a = 0; a < 2; ++a) {
    const AxisBound& b = q.bound[a];
    if (b.kind == Kind::None)
      continue;
    const bool towards = b.kind == Kind::Lower ? dir[a] > 0 : dir[a] < 0;
    if (!towards)
      return kInf;
    t = std::max(t, b.value / dir[a]);
  }
  return t;
}

bool inside(const RectWavefront& q, const Point& p, double tol)
{
  for (int a = 0; a < 2; ++a) {
    const AxisBound& b = q.bound[a];
    if (b.kind == Kind::Lower && p[a] < b.value - tol)
      return false;
    if (b.kind == Kind::Upper && p[a] > b.value + tol)
      return false;
  }
  return true;
}

/// Intersection of two quadrants; nullopt when a coordinate is bounded from
/// both sides inconsistently.
std::optional<RectWavefront> intersect(const RectWavefront& x, const RectWavefront& y)
{
  RectWavefront out = x;
  for (int a = 0; a < 2; ++a) {
    const AxisBound& b = y.bound[a];
    AxisBound& o = out.bound[a];
    if (b.kind == Kind::None)
      continue;
    if (o.kind == Kind::None) {
      o = b;
    } else if (o.kind != b.kind) {
      return std::nullopt;
    } else if (o.kind == Kind::Lower ? b.value > o.value : b.value < o.value) {
      o = b;
    }
  }
  return out;
}

using Polygon = std::vector<Point>;

/// Keeps the part of a convex polygon where f >= -tol.
template <typename F>
Polygon clip(const Polygon& poly, F&& f, double tol)
{
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point& s = poly[(k + n - 1) % n];
    const Point& e = poly[k];
    const double fs = f(s);
    const double fe = f(e);
    const bool in_s = fs >= -tol;
    const bool in_e = fe >= -tol;
    if (in_s != in_e) {
      const double t = std::clamp(fs / (fs - fe), 0.0, 1.0);
      out.push_back(s + t * (e - s));
    }
    if (in_e)
      out.push_back(e);
  }
  return out;
}

} // namespace

// ---------------------------------------------------------------------------
// State helpers

Point RectSweepState::to_square_plane(const Point& world) const
{
  const Point v = world - apex;
  return metric == Metric::L1 ? l1_to_linf<double>(v) : v;
}

Point RectSweepState::from_square_plane(const Point& q) const
{
  return apex + (metric == Metric::L1 ? linf_to_l1<double>(q) : q);
}

Point RectSweepState::direction(double angle) const { return unit_vector(angle + rotation); }

double RectSweepState::angle_of(const Point& q) const
{
  return detail::frame_angle_of(std::atan2(q.y(), q.x()) - rotation);
}

std::vector<RectSegment> RectSweepState::segments() const
{
  std::vector<RectSegment> out;
  if (wedge.state != WedgeState::Proper)
    return out;
  const Point dr = direction(wedge.right_angle);
  const Point dl = direction(wedge.left_angle);
  const Point r = entry(wavefront, dr) * dr;
  const Point l = entry(wavefront, dl) * dl;
  if (const auto c = corner()) {
    out.push_back(RectSegment{from_square_plane(r), *c});
    out.push_back(RectSegment{*c, from_square_plane(l)});
  } else {
    out.push_back(RectSegment{from_square_plane(r), from_square_plane(l)});
  }
  return out;
}

std::optional<Point> RectSweepState::corner() const
{
  if (wedge.state != WedgeState::Proper || wavefront.bound[0].kind == Kind::None ||
      wavefront.bound[1].kind == Kind::None)
    return std::nullopt;
  const Point c(wavefront.bound[0].value, wavefront.bound[1].value);
  const double a = angle_of(c);
  if (a <= wedge.right_angle + kAngleTol || a >= wedge.left_angle - kAngleTol)
    return std::nullopt;
  return from_square_plane(c);
}

// ---------------------------------------------------------------------------
// Step

namespace {

class RectStep {
public:
  RectStep(RectSweepState& s, const Polyline& L, std::size_t j) : s_(s), L_(L), j_(j) {}

  StepReport run();

private:
  RaySample sample(const RectWavefront& q, double angle) const
  {
    const Point d = s_.direction(angle);
    const auto span =
        line_ball_span<double>(Point::Zero(), d, UnitCircle<double>{c_, s_.delta, Metric::LInf});
    const double g = entry(q, d);
    if (!span || span->second < 0)
      return RaySample{g, g, g};
    return RaySample{g, std::max(0.0, span->first), span->second};
  }

  Side side_at(const RectWavefront& q, double angle, double inward, double width) const
  {
    const RaySample at = sample(q, angle);
    const double tol = kEpsilon * (s_.delta + at.wave);
    return detail::classify_side(at, tol, [&]() -> std::optional<RaySample> {
      if (width <= 0)
        return std::nullopt;
      return sample(q, angle + inward * 1e-6 * width);
    });
  }

  /// Angular interval covered by the square (relative to its center
  /// direction, so that it never wraps).
  std::pair<double, double> square_span() const
  {
    const double phi = s_.angle_of(c_);
    double lo = kInf, hi = -kInf;
    for (const Point& k : square_corners(UnitCircle<double>{c_, s_.delta, Metric::LInf})) {
      const double rel = std::atan2(cross<double>(c_, k), c_.dot(k));
      lo = std::min(lo, phi + rel);
      hi = std::max(hi, phi + rel);
    }
    return {lo, hi};
  }

  void abort_sweep()
  {
    s_.aborted = true;
    s_.wedge.state = WedgeState::Empty;
  }

  void check_after(const RectWavefront& before) const;
  void emit_svg(StepCase c) const;

  RectSweepState& s_;
  const Polyline& L_;
  std::size_t j_;
  Point c_ = Point::Zero();
};

StepReport RectStep::run()
{
  StepReport report;
  const double delta = s_.delta;
  c_ = s_.to_square_plane(L_[j_]);
  const RectWavefront own = quadrant_of(c_, delta, j_);
  const bool whole = own.unbounded();
  if (!whole && s_.options.check_invariants)
    s_.seen_centers.push_back(c_);

  if (s_.wedge.state == WedgeState::WholePlane) {
    if (whole)
      return report;
    const auto [lo, hi] = square_span();
    s_.wedge = Wedge{WedgeState::Proper, lo, hi};
    s_.wavefront = own;
    report.step_case = StepCase::BB;
    ++s_.stats.case_histogram[static_cast<std::size_t>(report.step_case)];
    ++s_.stats.arcs_inserted;
    s_.stats.max_arc_count = std::max(s_.stats.max_arc_count, s_.segments().size());
    emit_svg(report.step_case);
    return report;
  }
  if (whole && s_.options.fault == Fault::SkipNearApexNarrowing)
    return report;

  // intermediate wedge
  double right = s_.wedge.right_angle;
  double left = s_.wedge.left_angle;
  if (!whole) {
    const auto [lo, hi] = square_span();
    right = std::max(right, lo);
    left = std::min(left, hi);
    if (right > left) {
      abort_sweep();
      emit_svg(report.step_case);
      return report;
    }
  }

  const RectWavefront before = s_.wavefront;
  const double width = left - right;
  report.step_case = detail::combine(side_at(before, left, -1.0, width),
                                     side_at(before, right, +1.0, width));
  if (report.step_case == StepCase::TB || report.step_case == StepCase::BT)
    throw InvariantViolation("rectangle wavefront reached impossible case " +
                             std::string(to_string(report.step_case)));
  ++s_.stats.case_histogram[static_cast<std::size_t>(report.step_case)];

  // narrowing: rays through the part of the square beyond the wavefront
  const double tol = kEpsilon * (delta + c_.lpNorm<Eigen::Infinity>());
  const auto corners = square_corners(UnitCircle<double>{c_, delta, Metric::LInf});
  Polygon poly(corners.begin(), corners.end());
  for (int a = 0; a < 2 && !poly.empty(); ++a) {
    const AxisBound b = before.bound[a];
    if (b.kind == Kind::Lower)
      poly = clip(poly, [&](const Point& p) { return p[a] - b.value; }, tol);
    else if (b.kind == Kind::Upper)
      poly = clip(poly, [&](const Point& p) { return b.value - p[a]; }, tol);
  }
  const Point dr = s_.direction(right);
  const Point dl = s_.direction(left);
  if (!poly.empty())
    poly = clip(poly, [&](const Point& p) { return cross<double>(dr, p); }, tol);
  if (!poly.empty())
    poly = clip(poly, [&](const Point& p) { return cross<double>(p, dl); }, tol);

  double new_right = kInf, new_left = -kInf;
  for (const Point& p : poly) {
    if (p.norm() <= tol)
      continue;
    const double a = std::clamp(s_.angle_of(p), right, left);
    new_right = std::min(new_right, a);
    new_left = std::max(new_left, a);
  }
  const auto next = intersect(before, own);
  if (new_right > new_left || !next) {
    abort_sweep();
    emit_svg(report.step_case);
    return report;
  }
  for (int a = 0; a < 2; ++a)
    if (next->bound[a].circle != before.bound[a].circle ||
        next->bound[a].kind != before.bound[a].kind)
      ++s_.stats.arcs_inserted;
  s_.wedge.right_angle = new_right;
  s_.wedge.left_angle = new_left;
  s_.wavefront = *next;

  const std::size_t pieces = s_.segments().size();
  s_.stats.max_arc_count = std::max(s_.stats.max_arc_count, pieces);
  if (s_.options.check_invariants)
    check_after(before);
  emit_svg(report.step_case);
  return report;
}

void RectStep::check_after(const RectWavefront& before) const
{
  auto fail = [&](const std::string& what) {
    std::ostringstream msg;
    msg << "sweep " << s_.apex_index << " step " << j_ << ": " << what;
    throw InvariantViolation(msg.str());
  };
  const double delta = s_.delta;
  const auto pieces = s_.segments();
  if (pieces.empty() || pieces.size() > 2)
    fail("wavefront has " + std::to_string(pieces.size()) + " segments");

  // the visible part of the wavefront lies in every square defining it
  std::vector<Point> points;
  for (const RectSegment& seg : pieces) {
    points.push_back(s_.to_square_plane(seg.from));
    points.push_back(s_.to_square_plane(seg.to));
  }
  for (int a = 0; a < 2; ++a) {
    const AxisBound& b = s_.wavefront.bound[a];
    if (b.kind == Kind::None)
      continue;
    const Point owner = s_.to_square_plane(L_[b.circle]);
    bool visible = false;
    for (const Point& p : points)
      visible = visible || std::abs(p[a] - b.value) <= 1e-9 * (delta + std::abs(b.value));
    if (!visible)
      continue;
    for (const Point& p : points)
      if ((p - owner).lpNorm<Eigen::Infinity>() > delta * (1 + 1e-9) + 1e-9 * p.norm())
        fail("wavefront point outside contributing square " + std::to_string(b.circle));
  }

  const double right = s_.wedge.right_angle;
  const double width = s_.wedge.width();
  for (int k = 0; k < kSampledRays; ++k) {
    const double angle = right + width * (k + 0.5) / kSampledRays;
    const Point d = s_.direction(angle);
    const double g = entry(s_.wavefront, d);
    double envelope = 0.0;
    for (const Point& c : s_.seen_centers) {
      const auto span =
          line_ball_span<double>(Point::Zero(), d, UnitCircle<double>{c, delta, Metric::LInf});
      if (!span) {
        envelope = kInf;
        break;
      }
      envelope = std::max(envelope, std::max(0.0, span->first));
    }
    if (!std::isfinite(g) || std::abs(g - envelope) > 1e-6 * delta * (1.0 + g))
      fail("wavefront differs from the envelope of near square sides");
    if (g < entry(before, d) - 1e-6 * delta * (1.0 + g))
      fail("wavefront moved towards the apex");
  }
}

void RectStep::emit_svg(StepCase c) const
{
  if (!s_.options.svg)
    return;
  SvgFrame f;
  f.start_index = s_.apex_index;
  f.step_index = j_;
  f.wedge = s_.wedge;
  f.wedge.right_angle += s_.rotation;
  f.wedge.left_angle += s_.rotation;
  f.circle_center = c_;
  f.delta = s_.delta;
  f.metric = Metric::LInf;
  f.step_case = c;
  for (const RectSegment& seg : s_.segments())
    f.wavefront.push_back(
        SvgArcPiece{s_.to_square_plane(seg.from), s_.to_square_plane(seg.to), false, 0.0});
  s_.options.svg(s_.apex_index, j_, render_svg(f));
}

} // namespace

// ---------------------------------------------------------------------------
// Public entry points

RectSweepState rect_init_sweep(const Polyline& L, std::size_t i, double delta, Metric m,
                               SweepOptions options)
{
  if (m == Metric::L2)
    throw std::invalid_argument("rect_init_sweep: metric must be L1 or LInf");
  if (i + 1 >= L.size())
    throw std::out_of_range("rect_init_sweep: start vertex has no successor");
  RectSweepState s;
  s.apex_index = i;
  s.delta = delta;
  s.metric = m;
  s.apex = L[i];
  s.options = std::move(options);
  for (std::size_t k = i + 1; k < L.size(); ++k) {
    const Point q = s.to_square_plane(L[k]);
    if (q.lpNorm<Eigen::Infinity>() > delta) {
      s.rotation = std::atan2(q.y(), q.x()) - std::numbers::pi / 2;
      break;
    }
  }
  return s;
}

Location rect_locate(const RectSweepState& s, const Point& p)
{
  if (s.aborted)
    throw std::logic_error("rect_locate: sweep was aborted");
  if (s.wedge.state == WedgeState::WholePlane)
    return Location::InValidRegion;
  const Point q = s.to_square_plane(p);
  if (q.norm() == 0.0)
    return Location::BelowWavefront;
  const double a = s.angle_of(q);
  if (a < s.wedge.right_angle - kAngleTol || a > s.wedge.left_angle + kAngleTol)
    return Location::OutsideWedge;
  const double tol = kEpsilon * (s.delta + q.lpNorm<Eigen::Infinity>());
  return inside(s.wavefront, q, tol) ? Location::InValidRegion : Location::BelowWavefront;
}

StepReport rect_step(RectSweepState& state, const Polyline& L, std::size_t j, double delta)
{
  if (state.aborted)
    throw std::logic_error("rect_step: sweep was aborted");
  if (j <= state.apex_index || j >= L.size())
    throw std::out_of_range("rect_step: vertex index out of range");
  if (delta != state.delta)
    throw std::invalid_argument("rect_step: delta differs from the sweep's delta");
  return RectStep(state, L, j).run();
}

SweepResult rect_sweep_from(const Polyline& L, std::size_t i, double delta, Metric m,
                            const SweepOptions& options)
{
  SweepResult out;
  RectSweepState s = rect_init_sweep(L, i, delta, m, options);
  for (std::size_t j = i + 1; j < L.size(); ++j) {
    if (rect_locate(s, L[j]) == Location::InValidRegion)
      out.targets.push_back(j);
    rect_step(s, L, j, delta);
    if (s.aborted)
      break;
  }
  out.stats = s.stats;
  out.aborted = s.aborted;
  return out;
}

std::vector<std::size_t> rect_shortcuts_from(const Polyline& L, std::size_t i, double delta,
                                             Metric m)
{
  return rect_sweep_from(L, i, delta, m).targets;
}

} // namespace lfs
