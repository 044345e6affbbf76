#pragma once

// Seeded polyline generators for verification, benchmarks and the
// wavefront-size experiments.

#include "lfs/geometry.hpp"
#include "lfs/polyline.hpp"

#include <cstddef>
#include <cstdint>
#include <random>

namespace lfs {

using Rng = std::mt19937_64;

struct Instance {
  Polyline vertices;
  double delta = 1.0;
};

/// Whether the instance is close to a decision boundary under m: a pairwise
/// vertex distance within 1e-6 delta of delta or 2 delta, or a shortcut
/// decision that flips when delta changes by a factor 1 +- 1e-6.
bool near_critical(const Polyline& L, double delta, Metric m);

/// 2..max_n vertices uniform in [0, 10]^2 and delta uniform in [0.1, 3],
/// redrawn until not near_critical under m.
Instance uniform_instance(Rng& rng, std::size_t max_n, Metric m);

/// n vertices with x = 100 k / n and y a Brownian path of scale
/// `amplitude` (increments N(0, amplitude^2 / n)).
Polyline random_walk(Rng& rng, std::size_t n, double amplitude = 5.0);

/// Snake through a square lattice of spacing 2.5 delta, every vertex moved
/// by up to 0.4 delta per coordinate.
Polyline lattice_walk(Rng& rng, std::size_t n, double delta);

/// Apex at the origin followed by k vertices on a half circle of radius
/// delta / 2 around (0, 5 delta), visited clockwise.
Polyline cluster_instance(std::size_t k, double delta);

} // namespace lfs
