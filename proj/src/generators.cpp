#include "lfs/generators.hpp"

#include "lfs/frechet_oracle.hpp"

#include <cmath>
#include <numbers>

namespace lfs {

bool near_critical(const Polyline& L, double delta, Metric m)
{
  const double tol = 1e-6 * delta;
  for (std::size_t a = 0; a < L.size(); ++a) {
    for (std::size_t b = a + 1; b < L.size(); ++b) {
      const double d = lp_distance<double>(L[a], L[b], m);
      if (std::abs(d - delta) <= tol || std::abs(d - 2 * delta) <= tol)
        return true;
    }
  }
  for (std::size_t i = 0; i + 1 < L.size(); ++i)
    if (oracle_shortcuts_from(L, i, delta * (1 - 1e-6), m) !=
        oracle_shortcuts_from(L, i, delta * (1 + 1e-6), m))
      return true;
  return false;
}

Instance uniform_instance(Rng& rng, std::size_t max_n, Metric m)
{
  std::uniform_int_distribution<std::size_t> size(2, std::max<std::size_t>(2, max_n));
  std::uniform_real_distribution<double> coord(0.0, 10.0);
  std::uniform_real_distribution<double> radius(0.1, 3.0);
  while (true) {
    Instance out;
    out.vertices.resize(size(rng));
    for (Point& p : out.vertices)
      p = Point(coord(rng), coord(rng));
    out.delta = radius(rng);
    if (!near_critical(out.vertices, out.delta, m))
      return out;
  }
}

Polyline random_walk(Rng& rng, std::size_t n, double amplitude)
{
  std::normal_distribution<double> step(0.0, amplitude / std::sqrt(double(std::max<std::size_t>(n, 1))));
  Polyline out(n);
  double y = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = Point(100.0 * double(k) / double(n), y);
    y += step(rng);
  }
  return out;
}

Polyline lattice_walk(Rng& rng, std::size_t n, double delta)
{
  const double spacing = 2.5 * delta;
  const auto width = static_cast<std::size_t>(std::ceil(std::sqrt(double(n))));
  std::uniform_real_distribution<double> jitter(-0.4 * delta, 0.4 * delta);
  Polyline out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t row = k / width;
    const std::size_t col = row % 2 == 0 ? k % width : width - 1 - k % width;
    out[k] = Point(spacing * double(col) + jitter(rng), spacing * double(row) + jitter(rng));
  }
  return out;
}

Polyline cluster_instance(std::size_t k, double delta)
{
  Polyline out{Point::Zero()};
  const Point mid(0.0, 5.0 * delta);
  for (std::size_t a = 0; a < k; ++a) {
    const double phi = std::numbers::pi * (double(k - a) - 0.5) / double(k);
    out.push_back(mid + 0.5 * delta * unit_vector(phi));
  }
  return out;
}

} // namespace lfs
