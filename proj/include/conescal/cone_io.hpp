#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "conescal/cone.hpp"
#include "conescal/vector.hpp"

namespace conescal {

// Schema error with a JSON-pointer-style path to the offending field.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what) {}
};

namespace io {

using json = nlohmann::json;

inline Vector vector_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of numbers");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw SchemaError(path + "[" + std::to_string(i) + "]", "expected a number");
    v(static_cast<Index>(i)) = j[i].get<double>();
  }
  return v;
}

inline Matrix matrix_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vector row = vector_from_json(j[r], path + "[" + std::to_string(r) + "]");
    if (static_cast<std::size_t>(row.size()) != cols)
      throw SchemaError(path + "[" + std::to_string(r) + "]", "ragged rows");
    m.row(static_cast<Index>(r)) = row.transpose();
  }
  return m;
}

// Tagged cone record: {"kind":"orthant","n":2}, {"kind":"halfspace","rows":[[...],...]},
// {"kind":"soc","n":3}, {"kind":"product","factors":[...]}.
inline Cone cone_from_json(const json& j, const std::string& path = "cone") {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  if (!j.contains("kind") || !j["kind"].is_string())
    throw SchemaError(path + ".kind", "expected a string tag");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "orthant" || kind == "soc") {
      if (!j.contains("n") || !j["n"].is_number_integer())
        throw SchemaError(path + ".n", "expected an integer dimension");
      const auto n = j["n"].get<long long>();
      if (n < 1) throw SchemaError(path + ".n", "dimension must be >= 1");
      return kind == "orthant" ? Cone::orthant(static_cast<Index>(n))
                               : Cone::second_order(static_cast<Index>(n));
    }
    if (kind == "halfspace") {
      if (!j.contains("rows")) throw SchemaError(path + ".rows", "missing row matrix");
      return Cone::halfspace(matrix_from_json(j["rows"], path + ".rows"));
    }
    if (kind == "product") {
      if (!j.contains("factors") || !j["factors"].is_array() || j["factors"].empty())
        throw SchemaError(path + ".factors", "expected a non-empty array of cones");
      std::vector<Cone> factors;
      factors.reserve(j["factors"].size());
      for (std::size_t i = 0; i < j["factors"].size(); ++i)
        factors.push_back(
            cone_from_json(j["factors"][i], path + ".factors[" + std::to_string(i) + "]"));
      return Cone::product(std::move(factors));
    }
  } catch (const std::invalid_argument& e) {
    throw SchemaError(path, e.what());
  }
  throw SchemaError(path + ".kind", "unknown cone kind '" + kind + "'");
}

inline json cone_to_json(const Cone& cone) {
  json j;
  switch (cone.kind()) {
    case ConeKind::Orthant:
      j["kind"] = "orthant";
      j["n"] = cone.dim();
      break;
    case ConeKind::SecondOrder:
      j["kind"] = "soc";
      j["n"] = cone.dim();
      break;
    case ConeKind::Halfspace: {
      j["kind"] = "halfspace";
      json rows = json::array();
      const Matrix& m = cone.halfspace_rows();
      for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
      }
      j["rows"] = std::move(rows);
      break;
    }
    case ConeKind::Product: {
      j["kind"] = "product";
      json factors = json::array();
      for (const Cone& f : cone.factors()) factors.push_back(cone_to_json(f));
      j["factors"] = std::move(factors);
      break;
    }
  }
  return j;
}

}  // namespace io

}  // namespace conescal
