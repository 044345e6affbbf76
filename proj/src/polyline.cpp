#include "lfs/polyline.hpp"

#include <cmath>

namespace lfs {

void require_finite(const Polyline& L)
{
  for (const Point& p : L)
    if (!std::isfinite(p.x()) || !std::isfinite(p.y()))
      throw InvalidInput("polyline has a non-finite coordinate");
}

PreparedPolyline prepare(const Polyline& L)
{
  PreparedPolyline out;
  for (std::size_t k = 0; k < L.size(); ++k) {
    if (!out.vertices.empty() && out.vertices.back() == L[k])
      continue;
    out.vertices.push_back(L[k]);
    out.original_index.push_back(k);
  }
  if (!L.empty())
    out.original_index.back() = L.size() - 1;
  return out;
}

} // namespace lfs
