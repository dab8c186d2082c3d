#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "gsv/errors.hpp"
#include "gsv/matrix.hpp"
#include "gsv/rational.hpp"
#include "gsv/variety.hpp"

namespace gsv {

using Json = nlohmann::ordered_json;

inline Json matrixToJson(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(formatRational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Accepts rational strings ("p/q") or JSON integers.
inline RationalMatrix matrixFromJson(const Json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!j.is_array() || j.size() != rows) throw ShapeMismatch(what + ": expected " + std::to_string(rows) + " rows");
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw ShapeMismatch(what + ": row " + std::to_string(i + 1) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k) {
      const Json& e = row[k];
      if (e.is_string()) m(i, k) = parseRational(e.get<std::string>());
      else if (e.is_number_integer()) m(i, k) = Rational(e.get<long>());
      else throw SyntaxError(what + ": entries must be rational strings", k);
    }
  }
  return m;
}

// {"r":..., "s":..., "X": [[...]], "Y": [[...]]}
inline Json pointToJson(const GsvSpec& spec, const Point& p) {
  Json j;
  j["r"] = spec.r;
  j["s"] = spec.s;
  j["X"] = matrixToJson(p.X);
  j["Y"] = matrixToJson(p.Y);
  return j;
}

struct SpecPoint {
  GsvSpec spec;
  Point point;
};

inline SpecPoint pointFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("s") || !j.contains("X") || !j.contains("Y"))
    throw SyntaxError("point JSON needs keys r, s, X, Y", 0);
  if (!j["r"].is_number_integer() || !j["s"].is_number_integer()) throw SyntaxError("r and s must be integers", 0);
  GsvSpec spec(j["r"].get<int>(), j["s"].get<int>());
  Point p{matrixFromJson(j["X"], spec.ur(), spec.us(), "X"), matrixFromJson(j["Y"], spec.us(), spec.ur(), "Y")};
  return {spec, std::move(p)};
}

} // namespace gsv
