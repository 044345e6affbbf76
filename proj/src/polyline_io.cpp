#include "lfs/polyline_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lfs {

namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::size_t line)
{
  s = trim(s);
  if (!s.empty() && s.front() == '+')
    s.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size())
    throw ParseError("line " + std::to_string(line) + ": not a number: '" + std::string(s) + "'");
  return v;
}

bool starts_with_keyword(std::string_view s, std::string_view keyword)
{
  if (s.size() < keyword.size())
    return false;
  for (std::size_t k = 0; k < keyword.size(); ++k)
    if (std::toupper(static_cast<unsigned char>(s[k])) != keyword[k])
      return false;
  return true;
}

Polyline parse_wkt(std::string_view text)
{
  text = trim(text);
  text.remove_prefix(std::string_view("LINESTRING").size());
  text = trim(text);
  if (text.empty() || text.front() != '(' || text.back() != ')')
    throw ParseError("WKT: expected 'LINESTRING (x y, ...)'");
  text = text.substr(1, text.size() - 2);
  Polyline out;
  std::size_t item = 0;
  while (true) {
    ++item;
    const std::size_t comma = text.find(',');
    const std::string_view pair = trim(text.substr(0, comma));
    const std::size_t gap = pair.find_first_of(" \t\r\n");
    if (gap == std::string_view::npos)
      throw ParseError("WKT: coordinate " + std::to_string(item) + " needs x and y");
    out.emplace_back(parse_number(pair.substr(0, gap), item), parse_number(pair.substr(gap), item));
    if (comma == std::string_view::npos)
      break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

Polyline parse_csv(std::string_view text)
{
  Polyline out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    line = trim(line.substr(0, line.find('#')));
    if (line.empty())
      continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected 'x,y'");
    out.emplace_back(parse_number(line.substr(0, comma), line_no),
                     parse_number(line.substr(comma + 1), line_no));
  }
  return out;
}

} // namespace

ParsedPolyline parse_polyline(std::string_view text)
{
  ParsedPolyline out;
  if (starts_with_keyword(trim(text), "LINESTRING")) {
    out.format = Format::Wkt;
    out.vertices = parse_wkt(text);
  } else {
    out.vertices = parse_csv(text);
  }
  for (const Point& p : out.vertices)
    if (!std::isfinite(p.x()) || !std::isfinite(p.y()))
      throw ParseError("non-finite coordinate");
  return out;
}

ParsedPolyline read_polyline(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_polyline(buf.str());
}

std::string format_number(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Polyline& L)
{
  std::string out;
  for (const Point& p : L)
    out += format_number(p.x()) + "," + format_number(p.y()) + "\n";
  return out;
}

std::string to_wkt(const Polyline& L)
{
  std::string out = "LINESTRING (";
  for (std::size_t k = 0; k < L.size(); ++k)
    out += (k ? ", " : "") + format_number(L[k].x()) + " " + format_number(L[k].y());
  return out + ")\n";
}

void write_polyline(const std::string& path, const Polyline& L, Format format)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << (format == Format::Wkt ? to_wkt(L) : to_csv(L));
}

} // namespace lfs
