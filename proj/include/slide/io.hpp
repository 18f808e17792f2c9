#pragma once

// Point-set ingestion: CSV (one point per line) and JSON (array of numbers or
// array of coordinate arrays, optionally under a "points" key).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "slide/errors.hpp"
#include "slide/geometry.hpp"

namespace slide {

enum class PointFormat { csv, json };

inline PointFormat point_format_from_path(const std::string& path) {
  const auto dot = path.rfind('.');
  if (dot != std::string::npos && path.substr(dot) == ".json") return PointFormat::json;
  return PointFormat::csv;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline bool parse_double(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

}  // namespace detail

// One point per line, comma-separated coordinates. A first line containing
// a non-numeric field is treated as a header. Blank lines are ignored.
inline PointSet parse_points_csv(std::istream& in) {
  std::vector<double> coords;
  std::size_t dim = 0;
  std::size_t line_no = 0;
  bool first_content = true;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = detail::trim(line);
    if (body.empty()) continue;
    const auto fields = detail::split_commas(body);
    std::vector<double> row;
    row.reserve(fields.size());
    bool numeric = true;
    for (auto field : fields) {
      double v = 0.0;
      if (!detail::parse_double(field, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (first_content) {
        first_content = false;
        continue;
      }
      throw ParseError("non-numeric field", line_no);
    }
    first_content = false;
    if (dim == 0)
      dim = row.size();
    else if (row.size() != dim)
      throw ParseError("expected " + std::to_string(dim) + " coordinates, found " +
                           std::to_string(row.size()),
                       line_no);
    coords.insert(coords.end(), row.begin(), row.end());
  }
  if (dim == 0) throw ParseError("no points found", line_no == 0 ? 1 : line_no);
  return PointSet::euclidean(std::move(coords), dim);
}

inline PointSet parse_points_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_points_csv(in);
}

inline PointSet parse_points_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto upto = text.substr(0, std::min(text.size(), e.byte));
    const auto line = static_cast<std::size_t>(std::count(upto.begin(), upto.end(), '\n')) + 1;
    throw ParseError(e.what(), line);
  }
  if (doc.is_object() && doc.contains("points")) doc = doc.at("points");
  if (!doc.is_array() || doc.empty()) throw ParseError("expected a non-empty array of points", 0);

  std::vector<double> coords;
  std::size_t dim = 0;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    std::vector<double> row;
    if (item.is_number()) {
      row.push_back(item.get<double>());
    } else if (item.is_array()) {
      for (const auto& c : item) {
        if (!c.is_number()) throw ParseError("point " + std::to_string(i) + " is not numeric", 0);
        row.push_back(c.get<double>());
      }
    } else {
      throw ParseError("point " + std::to_string(i) + " is not numeric", 0);
    }
    if (row.empty()) throw ParseError("point " + std::to_string(i) + " is empty", 0);
    if (dim == 0)
      dim = row.size();
    else if (row.size() != dim)
      throw ParseError("point " + std::to_string(i) + " has inconsistent dimension", 0);
    coords.insert(coords.end(), row.begin(), row.end());
  }
  return PointSet::euclidean(std::move(coords), dim);
}

inline PointSet load_points(const std::string& path, PointFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  if (format == PointFormat::csv) return parse_points_csv(in);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_points_json(buffer.str());
}

inline PointSet load_points(const std::string& path) {
  return load_points(path, point_format_from_path(path));
}

}  // namespace slide
