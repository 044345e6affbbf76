#include "lfs/geometry.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace lfs;
using doctest::Approx;

namespace {

constexpr double pi = std::numbers::pi;

double deg(double rad) { return rad * 180.0 / pi; }

UnitCircle<double> circle(double x, double y, double r, Metric m = Metric::L2)
{
  return UnitCircle<double>{Point(x, y), r, m};
}

/// Signed distance of p to the boundary of c (negative inside).
double boundary_offset(const UnitCircle<double>& c, const Point& p)
{
  return testing::norm_of(p - c.center, c.metric) - c.radius;
}

} // namespace

TEST_CASE("lp_distance on a 3-4-5 triangle")
{
  const Point o(0, 0), p(3, 4);
  CHECK(lp_distance<double>(o, p, Metric::L2) == Approx(5.0));
  CHECK(lp_distance<double>(o, p, Metric::L1) == Approx(7.0));
  CHECK(lp_distance<double>(o, p, Metric::LInf) == Approx(4.0));
}

TEST_CASE("lp_distance is symmetric and satisfies the triangle inequality")
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-10, 10);
  for (Metric m : {Metric::L1, Metric::L2, Metric::LInf}) {
    for (int k = 0; k < 1000; ++k) {
      const Point a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
      CHECK(lp_distance<double>(a, b, m) == lp_distance<double>(b, a, m));
      CHECK(lp_distance<double>(a, c, m) <=
            lp_distance<double>(a, b, m) + lp_distance<double>(b, c, m) + 1e-12);
    }
  }
}

TEST_CASE("circle_circle_intersections: analytic cases")
{
  SUBCASE("external tangency")
  {
    const auto hits = circle_circle_intersections(circle(0, 0, 1), circle(2, 0, 1));
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].x() == Approx(1.0));
    CHECK(hits[0].y() == Approx(0.0));
  }
  SUBCASE("two points")
  {
    const auto hits = circle_circle_intersections(circle(0, 0, 1), circle(1, 0, 1));
    REQUIRE(hits.size() == 2);
    for (const Point& p : hits) {
      CHECK(p.x() == Approx(0.5));
      CHECK(std::abs(p.y()) == Approx(std::sqrt(3.0) / 2));
    }
    CHECK(hits[0].y() * hits[1].y() < 0);
  }
  SUBCASE("disjoint")
  {
    CHECK(circle_circle_intersections(circle(0, 0, 1), circle(3, 0, 1)).empty());
  }
  SUBCASE("coincident centers are rejected")
  {
    CHECK_THROWS_AS(circle_circle_intersections(circle(1, 1, 1), circle(1, 1, 1)), GeometryError);
  }
  SUBCASE("squares sharing an edge segment report its extreme points")
  {
    const auto hits = circle_circle_intersections(circle(0, 0, 1, Metric::LInf),
                                                  circle(2, 1, 1, Metric::LInf));
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].x() == Approx(1.0));
    CHECK(hits[0].y() == Approx(0.0));
    CHECK(hits[1].x() == Approx(1.0));
    CHECK(hits[1].y() == Approx(1.0));
  }
}

TEST_CASE("circle_circle_intersections: points lie on both boundaries")
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  std::uniform_real_distribution<double> radius(0.1, 3);
  const Metric metrics[] = {Metric::L2, Metric::L1, Metric::LInf};
  long checked = 0, failures = 0;
  for (int k = 0; k < 1'000'000; ++k) {
    const Metric m = metrics[k % 3];
    const double r = radius(rng);
    const auto a = circle(u(rng), u(rng), r, m);
    const auto b = circle(u(rng), u(rng), r, m);
    for (const Point& p : circle_circle_intersections(a, b)) {
      ++checked;
      const double scale = 1e-9 * (r + a.center.norm() + b.center.norm());
      if (std::abs(boundary_offset(a, p)) > scale || std::abs(boundary_offset(b, p)) > scale)
        ++failures;
    }
  }
  CHECK(checked > 500'000);
  CHECK(failures == 0);
}

TEST_CASE("ray_circle_intersections: analytic cases")
{
  const Ray along_x{Point(0, 0), 0.0};
  const auto hits = ray_circle_intersections(along_x, circle(2, 0, 1));
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].x() == Approx(1.0));
  CHECK(hits[1].x() == Approx(3.0));

  CHECK(ray_circle_intersections(along_x, circle(0, 2, 1)).empty());

  const auto exit = ray_circle_intersections(along_x, circle(0.5, 0, 1));
  REQUIRE(exit.size() == 1);
  CHECK(exit[0].x() == Approx(1.5));
  CHECK(exit[0].y() == Approx(0.0));

  const auto tangent = ray_circle_intersections(Ray{Point(0, 0), 0.0}, circle(2, 1, 1));
  REQUIRE(tangent.size() == 2);
  CHECK((tangent[0] - tangent[1]).norm() < 1e-12);
}

TEST_CASE("ray_circle_intersections agrees with a sign-change scan")
{
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-4, 4);
  std::uniform_real_distribution<double> angle(-pi, pi);
  std::uniform_real_distribution<double> radius(0.2, 2);
  const Metric metrics[] = {Metric::L2, Metric::L1, Metric::LInf};
  int mismatches = 0;
  for (int k = 0; k < 600; ++k) {
    const auto c = circle(u(rng), u(rng), radius(rng), metrics[k % 3]);
    const Ray ray{Point(u(rng), u(rng)), angle(rng)};
    // all relevant crossings lie within this length
    const double reach = (ray.origin - c.center).norm() + 3 * c.radius;
    constexpr int samples = 10'000;
    int changes = 0;
    double prev = boundary_offset(c, ray.origin);
    for (int s = 1; s <= samples; ++s) {
      const double cur = boundary_offset(c, ray.at(reach * s / samples));
      if ((prev < 0) != (cur < 0))
        ++changes;
      prev = cur;
    }
    const auto hits = ray_circle_intersections(ray, c);
    // grazing rays may be missed by the scan; skip those
    if (hits.size() == 2 && (hits[0] - hits[1]).norm() < 2 * reach / samples)
      continue;
    if (hits.size() != changes)
      ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("local_wedge: tangent rays")
{
  const AngularFrame frame{Point(0, 0), 0.0};
  SUBCASE("disk")
  {
    const LocalWedge w = local_wedge(Point(0, 0), Point(0, 2), 1.0, Metric::L2, frame);
    REQUIRE_FALSE(w.whole_plane);
    CHECK(deg(w.right_angle) == Approx(60.0));
    CHECK(deg(w.left_angle) == Approx(120.0));
  }
  SUBCASE("box: rays through the extreme corners")
  {
    const LocalWedge w = local_wedge(Point(0, 0), Point(0, 2), 1.0, Metric::LInf, frame);
    CHECK(deg(w.right_angle) == Approx(45.0));
    CHECK(deg(w.left_angle) == Approx(135.0));
    CHECK(w.right_tangent.x() == Approx(1.0));
    CHECK(w.right_tangent.y() == Approx(1.0));
    CHECK(w.left_tangent.x() == Approx(-1.0));
  }
  SUBCASE("apex inside the circle")
  {
    CHECK(local_wedge(Point(0, 0), Point(0.5, 0), 1.0, Metric::L2, frame).whole_plane);
    CHECK(local_wedge(Point(0, 0), Point(0.5, 0.5), 1.0, Metric::L1, frame).whole_plane);
  }
}

TEST_CASE("local_wedge rays touch the circle")
{
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-10, 10);
  std::uniform_real_distribution<double> radius(0.1, 3);
  int checked = 0;
  for (int k = 0; k < 2000; ++k) {
    const Point apex(u(rng), u(rng)), center(u(rng), u(rng));
    const double r = radius(rng);
    const AngularFrame frame{apex, u(rng)};
    const LocalWedge w = local_wedge(apex, center, r, Metric::L2, frame);
    if (w.whole_plane)
      continue;
    for (double a : {w.left_angle, w.right_angle}) {
      const Point dir = unit_vector(a + frame.rotation);
      const double dist = std::abs(cross<double>(dir, center - apex));
      CHECK(dist == Approx(r).epsilon(1e-9));
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("wave_of: bottom arc between the tangent points")
{
  const AngularFrame frame{Point(0, 0), 0.0};
  SUBCASE("disk")
  {
    const Wave w = wave_of(local_wedge(Point(0, 0), Point(0, 2), 1.0, Metric::L2, frame));
    REQUIRE_FALSE(w.empty);
    const Point mid = w.point_at(pi / 2);
    CHECK(mid.x() == Approx(0.0));
    CHECK(mid.y() == Approx(1.0));
    CHECK(w.start.x() > 0);
    CHECK(w.end.x() < 0);
    CHECK((w.start - Point(0, 2)).norm() == Approx(1.0));
  }
  SUBCASE("box: the bottom edge")
  {
    const Wave w = wave_of(local_wedge(Point(0, 0), Point(0, 2), 1.0, Metric::LInf, frame));
    CHECK(w.start.x() == Approx(1.0));
    CHECK(w.start.y() == Approx(1.0));
    CHECK(w.end.x() == Approx(-1.0));
    CHECK(w.end.y() == Approx(1.0));
    CHECK_FALSE(w.corner.has_value());
  }
  SUBCASE("box seen diagonally has a corner")
  {
    const Wave w = wave_of(local_wedge(Point(0, 0), Point(3, 3), 1.0, Metric::LInf, frame));
    REQUIRE(w.corner.has_value());
    CHECK(w.corner->x() == Approx(2.0));
    CHECK(w.corner->y() == Approx(2.0));
  }
  SUBCASE("whole plane")
  {
    CHECK(wave_of(local_wedge(Point(0, 0), Point(0.5, 0), 1.0, Metric::L2, frame)).empty);
  }
}

TEST_CASE("angle_in_frame")
{
  CHECK(angle_in_frame(AngularFrame{Point(0, 0), 0.0}, Point(1, 0)) == Approx(0.0));
  CHECK(angle_in_frame(AngularFrame{Point(0, 0), 0.0}, Point(0, 1)) == Approx(pi / 2));
  CHECK(angle_in_frame(AngularFrame{Point(0, 0), pi / 2}, Point(0, 1)) == Approx(0.0));
  CHECK_THROWS_AS(angle_in_frame(AngularFrame{Point(1, 1), 0.0}, Point(1, 1)), GeometryError);
}

TEST_CASE("bottom arcs crossing twice meet again on the top arcs")
{
  // Two unit circles seen from an outside point p: when one intersection
  // point is on both bottom arcs, the other is on both top arcs.
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const Point p(0, 0);
  int cases = 0;
  for (int k = 0; k < 20000; ++k) {
    const Point a(u(rng), 4 + u(rng)), b(u(rng), 4 + u(rng));
    if ((a - b).norm() < 1e-6)
      continue;
    const auto hits = circle_circle_intersections(circle(a.x(), a.y(), 1), circle(b.x(), b.y(), 1));
    if (hits.size() != 2)
      continue;
    auto bottom = [&](const Point& x, const Point& c) { return (x - c).dot(x - p) < 0; };
    const bool first_bottom = bottom(hits[0], a) && bottom(hits[0], b);
    const bool second_bottom = bottom(hits[1], a) && bottom(hits[1], b);
    if (!first_bottom && !second_bottom)
      continue;
    ++cases;
    const Point other = first_bottom ? hits[1] : hits[0];
    CHECK_FALSE(bottom(other, a));
    CHECK_FALSE(bottom(other, b));
  }
  CHECK(cases > 100);
}
