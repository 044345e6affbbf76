#pragma once

// Text formats: CSV with one "x,y" per line ('#' starts a comment, blank
// lines are skipped) or a WKT LINESTRING, detected by its leading keyword.
// Numbers are written with 17 significant digits, so CSV round-trips
// exactly.

#include "lfs/polyline.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lfs {

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class Format { Csv, Wkt };

struct ParsedPolyline {
  Polyline vertices;
  Format format = Format::Csv;
};

ParsedPolyline parse_polyline(std::string_view text);
ParsedPolyline read_polyline(const std::string& path);

std::string format_number(double v);
std::string to_csv(const Polyline& L);
std::string to_wkt(const Polyline& L);
void write_polyline(const std::string& path, const Polyline& L, Format format);

} // namespace lfs
