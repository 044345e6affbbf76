#include "lfs/frechet_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lfs {

namespace {

// Clips [lo, hi] by the constraint  s * t <= rhs.
void clip(double s, double rhs, double& lo, double& hi, bool& feasible)
{
  if (s > 0)
    hi = std::min(hi, rhs / s);
  else if (s < 0)
    lo = std::max(lo, rhs / s);
  else if (rhs < 0)
    feasible = false;
}

} // namespace

std::optional<MatchInterval> ball_segment_interval(const Point& center, double delta, Metric m,
                                                   const Point& a, const Point& b)
{
  const double r = delta * (1.0 + kEpsilon);
  const Point d = b - a;
  const Point rel = a - center;
  double lo = 0.0, hi = 1.0;
  bool feasible = true;

  switch (m) {
  case Metric::L2: {
    const double len2 = d.squaredNorm();
    if (len2 == 0.0) {
      if (rel.norm() > r)
        return std::nullopt;
      return MatchInterval{0.0, 1.0};
    }
    const double len = std::sqrt(len2);
    const double foot = -rel.dot(d) / len2;
    const double off = cross<double>(d, rel) / len;
    const double h2 = r * r - off * off;
    if (h2 < 0)
      return std::nullopt;
    const double half = std::sqrt(h2) / len;
    lo = std::max(lo, foot - half);
    hi = std::min(hi, foot + half);
    break;
  }
  case Metric::LInf:
    for (int ax = 0; ax < 2; ++ax) {
      clip(d[ax], r - rel[ax], lo, hi, feasible);
      clip(-d[ax], r + rel[ax], lo, hi, feasible);
    }
    break;
  case Metric::L1:
    for (double sx : {-1.0, 1.0})
      for (double sy : {-1.0, 1.0})
        clip(sx * d.x() + sy * d.y(), r - (sx * rel.x() + sy * rel.y()), lo, hi, feasible);
    break;
  }
  if (!feasible || lo > hi)
    return std::nullopt;
  return MatchInterval{lo, hi};
}

bool shortcut_is_valid_oracle(const Polyline& L, std::size_t i, std::size_t k, double delta,
                              Metric m)
{
  if (i >= k || k >= L.size())
    throw std::out_of_range("shortcut_is_valid_oracle: need i < k < n");
  const Point& a = L[i];
  const Point& b = L[k];

  // No early exit: the scan over all intermediate vertices is what makes the
  // reference algorithm cubic.
  bool valid = true;
  double t = 0.0;
  for (std::size_t j = i + 1; j < k; ++j) {
    const auto iv = ball_segment_interval(L[j], delta, m, a, b);
    if (!iv) {
      valid = false;
      continue;
    }
    t = std::max(t, iv->lo);
    valid = valid && t <= iv->hi;
  }
  return valid;
}

std::vector<std::size_t> oracle_shortcuts_from(const Polyline& L, std::size_t i, double delta,
                                               Metric m)
{
  std::vector<std::size_t> out;
  for (std::size_t k = i + 1; k < L.size(); ++k)
    if (shortcut_is_valid_oracle(L, i, k, delta, m))
      out.push_back(k);
  return out;
}

} // namespace lfs
