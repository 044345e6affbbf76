#include "lfs/svg_debug.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace lfs {

namespace {

std::string num(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

} // namespace

std::string render_svg(const SvgFrame& f)
{
  // bounding box over everything that is drawn
  double extent = f.circle_center.norm() + 2 * f.delta;
  for (const auto& piece : f.wavefront)
    extent = std::max({extent, piece.from.norm(), piece.to.norm()});
  extent = std::max(extent, 1.0) * 1.1;
  const double stroke = extent / 400.0;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(-extent) + " " +
         num(-extent) + " " + num(2 * extent) + " " + num(2 * extent) + "\">\n";
  out += "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" + num(stroke) + "\">\n";

  if (f.wedge.state == WedgeState::Proper) {
    for (double angle : {f.wedge.right_angle, f.wedge.left_angle}) {
      const Point end = extent * unit_vector(angle);
      out += "<line x1=\"0\" y1=\"0\" x2=\"" + num(end.x()) + "\" y2=\"" + num(end.y()) +
             "\" stroke=\"gray\"/>\n";
    }
  }

  if (f.metric == Metric::L2) {
    out += "<circle cx=\"" + num(f.circle_center.x()) + "\" cy=\"" + num(f.circle_center.y()) +
           "\" r=\"" + num(f.delta) + "\" stroke=\"orange\"/>\n";
  } else {
    UnitCircle<double> c{f.circle_center, f.delta, f.metric};
    const auto corners = square_corners(c);
    out += "<polygon points=\"";
    for (std::size_t k = 0; k < corners.size(); ++k)
      out += (k ? " " : "") + num(corners[k].x()) + "," + num(corners[k].y());
    out += "\" stroke=\"orange\"/>\n";
  }

  for (const auto& piece : f.wavefront) {
    out += "<path d=\"M " + num(piece.from.x()) + " " + num(piece.from.y());
    if (piece.circular)
      out += " A " + num(piece.radius) + " " + num(piece.radius) + " 0 0 0 ";
    else
      out += " L ";
    out += num(piece.to.x()) + " " + num(piece.to.y()) + "\" stroke=\"blue\"/>\n";
  }
  out += "</g>\n";
  out += "<text x=\"" + num(-extent * 0.95) + "\" y=\"" + num(-extent * 0.85) +
         "\" font-size=\"" + num(extent / 12) + "\">" + std::to_string(f.start_index) + "/" +
         std::to_string(f.step_index) + " " + std::string(to_string(f.step_case)) + "</text>\n";
  out += "</svg>\n";
  return out;
}

} // namespace lfs
