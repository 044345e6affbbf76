#include "lfs/frechet_oracle.hpp"
#include "lfs/generators.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lfs;
using doctest::Approx;

TEST_CASE("ball_segment_interval")
{
  const Point a(0, 0), b(4, 0);
  SUBCASE("tangent")
  {
    const auto iv = ball_segment_interval(Point(1, 1), 1.0, Metric::L2, a, b);
    REQUIRE(iv);
    CHECK(iv->lo == Approx(0.25).epsilon(1e-4));
    CHECK(iv->hi == Approx(0.25).epsilon(1e-4));
  }
  SUBCASE("secant matches the quadratic formula and a dense scan")
  {
    const auto iv = ball_segment_interval(Point(3, 0.5), 1.0, Metric::L2, a, b);
    REQUIRE(iv);
    CHECK(iv->lo == Approx((3 - std::sqrt(0.75)) / 4));
    CHECK(iv->hi == Approx((3 + std::sqrt(0.75)) / 4));
    double lo = 2, hi = -1;
    constexpr int samples = 1'000'000;
    for (int s = 0; s <= samples; ++s) {
      const double t = double(s) / samples;
      if ((a + t * (b - a) - Point(3, 0.5)).norm() <= 1.0) {
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
    }
    CHECK(iv->lo == Approx(lo).epsilon(2e-6));
    CHECK(iv->hi == Approx(hi).epsilon(2e-6));
  }
  SUBCASE("far away")
  {
    for (Metric m : {Metric::L1, Metric::L2, Metric::LInf})
      CHECK_FALSE(ball_segment_interval(Point(10, 10), 1.0, m, a, b));
  }
  SUBCASE("squares clip exactly")
  {
    const auto box = ball_segment_interval(Point(2, 0.5), 1.0, Metric::LInf, a, b);
    REQUIRE(box);
    CHECK(box->lo == Approx(0.25));
    CHECK(box->hi == Approx(0.75));
    const auto diamond = ball_segment_interval(Point(2, 0.5), 1.0, Metric::L1, a, b);
    REQUIRE(diamond);
    CHECK(diamond->lo == Approx(1.5 / 4));
    CHECK(diamond->hi == Approx(2.5 / 4));
  }
}

TEST_CASE("shortcut_is_valid_oracle: examples")
{
  const Polyline bump{{0, 0}, {2, 1}, {4, 0}};
  CHECK(shortcut_is_valid_oracle(bump, 0, 2, 1.0, Metric::L2));
  CHECK_FALSE(shortcut_is_valid_oracle(bump, 0, 2, 0.5, Metric::L2));

  // each vertex is close to the segment, but in the wrong order
  const Polyline back{{0, 0}, {3, 0.5}, {1, 0.5}, {4, 0}};
  CHECK(ball_segment_interval(back[1], 1.0, Metric::L2, back[0], back[3]));
  CHECK(ball_segment_interval(back[2], 1.0, Metric::L2, back[0], back[3]));
  CHECK_FALSE(shortcut_is_valid_oracle(back, 0, 3, 1.0, Metric::L2));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 10);
  Polyline any(8);
  for (Point& p : any)
    p = Point(u(rng), u(rng));
  for (std::size_t i = 0; i + 1 < any.size(); ++i)
    CHECK(shortcut_is_valid_oracle(any, i, i + 1, 0.01, Metric::L2));

  CHECK_THROWS_AS(shortcut_is_valid_oracle(bump, 2, 2, 1.0, Metric::L2), std::out_of_range);
  CHECK_THROWS_AS(shortcut_is_valid_oracle(bump, 0, 3, 1.0, Metric::L2), std::out_of_range);
}

TEST_CASE("shortcut_is_valid_oracle: degenerate shortcut of zero length")
{
  const Polyline loop{{0, 0}, {0.5, 0.2}, {-0.3, 0.4}, {0, 0}};
  CHECK(shortcut_is_valid_oracle(loop, 0, 3, 0.6, Metric::L2));
  CHECK_FALSE(shortcut_is_valid_oracle(loop, 0, 3, 0.5, Metric::L2));
}

TEST_CASE("shortcut_is_valid_oracle: monotone in delta")
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 10);
  for (Metric m : {Metric::L1, Metric::L2, Metric::LInf}) {
    for (int k = 0; k < 300; ++k) {
      Polyline L(10);
      for (Point& p : L)
        p = Point(u(rng), u(rng));
      for (std::size_t i = 0; i + 2 < L.size(); ++i)
        for (std::size_t j = i + 2; j < L.size(); ++j)
          for (double d : {0.5, 1.0, 2.0, 4.0})
            if (shortcut_is_valid_oracle(L, i, j, d, m))
              CHECK(shortcut_is_valid_oracle(L, i, j, d * 1.5, m));
    }
  }
}

TEST_CASE("shortcut_is_valid_oracle: vertices on the segment in order")
{
  const Polyline L{{0, 0}, {1, 1}, {1.5, 1.5}, {3, 3}, {4, 4}};
  for (double d : {1e-9, 0.1, 10.0})
    CHECK(shortcut_is_valid_oracle(L, 0, 4, d, Metric::L2));
}

TEST_CASE("shortcut_is_valid_oracle agrees with a discretized reachability check")
{
  Rng rng(23);
  std::uniform_int_distribution<std::size_t> size(2, 12);
  std::uniform_real_distribution<double> u(0, 10);
  std::uniform_real_distribution<double> radius(0.1, 3);
  const Metric metrics[] = {Metric::L2, Metric::L1, Metric::LInf};
  int instances = 0, disagreements = 0;
  while (instances < 10'000) {
    const Metric m = metrics[instances % 3];
    Polyline L(size(rng));
    for (Point& p : L)
      p = Point(u(rng), u(rng));
    const double delta = radius(rng);
    // keep away from decisions that flip under a 1e-3 change of delta
    bool critical = false;
    for (std::size_t i = 0; i + 1 < L.size() && !critical; ++i)
      critical = oracle_shortcuts_from(L, i, delta * (1 - 1e-3), m) !=
                 oracle_shortcuts_from(L, i, delta * (1 + 1e-3), m);
    if (critical)
      continue;
    ++instances;
    for (std::size_t i = 0; i + 1 < L.size(); ++i)
      for (std::size_t k = i + 1; k < L.size(); ++k)
        if (shortcut_is_valid_oracle(L, i, k, delta, m) !=
            testing::grid_shortcut_valid(L, i, k, delta, m))
          ++disagreements;
  }
  CHECK(disagreements == 0);
}
