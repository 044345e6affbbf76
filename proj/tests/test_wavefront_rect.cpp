#include "lfs/frechet_oracle.hpp"
#include "lfs/generators.hpp"
#include "lfs/wavefront_rect.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace lfs;
using doctest::Approx;

namespace {

double deg(double rad) { return rad * 180.0 / std::numbers::pi; }

SweepOptions checked()
{
  SweepOptions o;
  o.check_invariants = true;
  return o;
}

} // namespace

TEST_CASE("rect_step: first box, then a collinear climb")
{
  const Polyline L{{0, 0}, {0, 2}, {0, 4}};
  RectSweepState s = rect_init_sweep(L, 0, 1.0, Metric::LInf, checked());
  CHECK(s.wedge.state == WedgeState::WholePlane);
  CHECK(rect_step(s, L, 1, 1.0).step_case == StepCase::BB);
  CHECK(deg(s.wedge.right_angle) == Approx(45.0));
  CHECK(deg(s.wedge.left_angle) == Approx(135.0));
  auto segs = s.segments();
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].from.x() == Approx(1.0));
  CHECK(segs[0].from.y() == Approx(1.0));
  CHECK(segs[0].to.x() == Approx(-1.0));
  CHECK(segs[0].to.y() == Approx(1.0));

  CHECK(rect_locate(s, Point(0, 4)) == Location::InValidRegion);
  CHECK(rect_locate(s, Point(0, 0.5)) == Location::BelowWavefront);
  CHECK(rect_locate(s, Point(4, 0.1)) == Location::OutsideWedge);

  rect_step(s, L, 2, 1.0);
  segs = s.segments();
  REQUIRE(segs.size() == 1);
  CHECK(segs[0].from.y() == Approx(3.0));
  CHECK(segs[0].to.y() == Approx(3.0));
  // the wedge now spans the new box, seen from the apex
  CHECK(deg(s.wedge.right_angle) == Approx(deg(std::atan2(3.0, 1.0))));
  CHECK(deg(s.wedge.left_angle) == Approx(180.0 - deg(std::atan2(3.0, 1.0))));
}

TEST_CASE("rect_step: disjoint boxes end the sweep")
{
  const Polyline L{{0, 0}, {0, 2}, {5, 2}, {0, 9}};
  RectSweepState s = rect_init_sweep(L, 0, 1.0, Metric::LInf);
  rect_step(s, L, 1, 1.0);
  rect_step(s, L, 2, 1.0);
  CHECK(s.aborted);
  CHECK(rect_shortcuts_from(L, 0, 1.0, Metric::LInf) == std::vector<std::size_t>{1});
}

TEST_CASE("rect wavefront turns a corner")
{
  const Polyline L{{0, 0}, {3, 3}, {3.5, 3.2}};
  RectSweepState s = rect_init_sweep(L, 0, 1.0, Metric::LInf, checked());
  rect_step(s, L, 1, 1.0);
  const auto segs = s.segments();
  REQUIRE(segs.size() == 2);
  REQUIRE(s.corner());
  CHECK(s.corner()->x() == Approx(2.0));
  CHECK(s.corner()->y() == Approx(2.0));
  CHECK(segs[0].to == segs[1].from);
}

TEST_CASE("rect_shortcuts_from: examples")
{
  for (Metric m : {Metric::LInf, Metric::L1}) {
    CHECK(rect_shortcuts_from(Polyline{{0, 0}, {2, 1}, {4, 0}}, 0, 1.0, m) ==
          std::vector<std::size_t>{1, 2});
    CHECK(rect_shortcuts_from(Polyline{{0, 0}, {3, 0.5}, {0.5, 0.5}, {4, 0}}, 0, 1.0, m) ==
          std::vector<std::size_t>{1});
    const Polyline wide{{0, 0}, {3, 1}, {-2, 4}, {5, 5}, {1, -3}};
    CHECK(rect_shortcuts_from(wide, 0, 100.0, m) == std::vector<std::size_t>{1, 2, 3, 4});
  }
  CHECK_THROWS_AS(rect_init_sweep(Polyline{{0, 0}, {1, 1}}, 0, 1.0, Metric::L2),
                  std::invalid_argument);
}

TEST_CASE("rect sweeps match the oracle with at most two segments")
{
  for (Metric m : {Metric::LInf, Metric::L1}) {
    Rng rng(41);
    std::size_t most = 0;
    for (int t = 0; t < 1500; ++t) {
      const Instance inst = uniform_instance(rng, 30, m);
      const Polyline& L = inst.vertices;
      for (std::size_t i = 0; i + 1 < L.size(); ++i) {
        const SweepResult r = rect_sweep_from(L, i, inst.delta, m, checked());
        REQUIRE(r.targets == oracle_shortcuts_from(L, i, inst.delta, m));
        CHECK(r.stats.max_arc_count <= 2);
        CHECK(r.stats.case_histogram[std::size_t(StepCase::TB)] == 0);
        CHECK(r.stats.case_histogram[std::size_t(StepCase::BT)] == 0);
        most = std::max(most, r.stats.max_arc_count);
      }
    }
    CHECK(most == 2);
  }
}

TEST_CASE("L1 through the rotated frame equals a rotated LInf problem")
{
  // rotating the plane by 45 degrees and scaling by sqrt(2) maps L1 balls to
  // LInf balls of the same radius
  Rng rng(43);
  for (int t = 0; t < 500; ++t) {
    const Instance inst = uniform_instance(rng, 20, Metric::L1);
    Polyline rotated;
    for (const Point& p : inst.vertices)
      rotated.emplace_back(p.x() + p.y(), p.y() - p.x());
    for (std::size_t i = 0; i + 1 < inst.vertices.size(); ++i) {
      const auto l1 = rect_shortcuts_from(inst.vertices, i, inst.delta, Metric::L1);
      CHECK(l1 == oracle_shortcuts_from(inst.vertices, i, inst.delta, Metric::L1));
      CHECK(l1 == oracle_shortcuts_from(rotated, i, inst.delta, Metric::LInf));
    }
  }
}

TEST_CASE("rect valid region agrees with a rasterization of the shortcut oracle")
{
  for (Metric m : {Metric::LInf, Metric::L1}) {
    Rng rng(47);
    int snapshots = 0;
    while (snapshots < 6) {
      const Instance inst = uniform_instance(rng, 7, m);
      const Polyline& L = inst.vertices;
      if (L.size() < 4)
        continue;
      double extent = 0;
      for (const Point& p : L)
        extent = std::max(extent, (p - L[0]).norm());
      extent += 2 * inst.delta;
      RectSweepState s = rect_init_sweep(L, 0, inst.delta, m, checked());
      for (std::size_t j = 1; j + 1 < L.size(); ++j) {
        rect_step(s, L, j, inst.delta);
        if (s.aborted)
          break;
        const auto report = testing::compare_raster(
            L[0], extent, 1000,
            [&](const Point& x) { return rect_locate(s, x) == Location::InValidRegion; },
            [&](const Point& x) {
              Polyline sub(L.begin(), L.begin() + std::ptrdiff_t(j) + 1);
              sub.push_back(x);
              return x != L[0] &&
                     shortcut_is_valid_oracle(sub, 0, sub.size() - 1, inst.delta, m);
            });
        CHECK(report.disagreements == 0);
        ++snapshots;
      }
    }
  }
}
