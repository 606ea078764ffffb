#pragma once

// JSON reading and writing of matrices, rationals and exponent vectors.
// Matrix literals are arrays of rows; entries may be JSON integers or strings
// "p/q". Rationals are always written as strings.

#include "matknap/heisenberg.hpp"
#include "matknap/lattice.hpp"
#include "matknap/matrix.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace matknap::io {

using json = nlohmann::ordered_json;

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw invalid_input("expected an integer or a \"p/q\" string, got " + j.dump());
}

inline json to_json(const Rational& q) { return q.get_str(); }

inline json to_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline json to_json(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const std::vector<IntVec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(to_json(v));
  return a;
}

inline json to_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw invalid_input("matrix must be a nonempty array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw invalid_input("matrix row must be an array");
    std::vector<Rational> row;
    for (const auto& x : r) row.push_back(rational_from_json(x));
    rows.push_back(std::move(row));
  }
  return Mat::from_rows(rows);
}

inline std::vector<Mat> matrices_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw invalid_input("expected a nonempty array of matrices");
  std::vector<Mat> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

inline Heis heis_from_json(const json& j) {
  if (j.is_array() && j.size() == 3 && !j[0].is_array())
    return {rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2])};
  return from_mat(matrix_from_json(j));
}

inline json to_json(const Heis& h) { return json::array({to_json(h.a), to_json(h.b), to_json(h.c)}); }

inline IntVec intvec_from_json(const json& j) {
  if (!j.is_array()) throw invalid_input("expected an array of integers");
  IntVec v;
  for (const auto& x : j) {
    Rational q = rational_from_json(x);
    if (q.get_den() != 1) throw invalid_input("expected an integer, got " + x.dump());
    v.push_back(q.get_num());
  }
  return v;
}

/// Inline JSON, or "@path" to read it from a file.
inline json parse_source(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw invalid_input("cannot read " + text.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw invalid_input(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace matknap::io
