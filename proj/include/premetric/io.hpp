#pragma once

// JSON interchange for media, metrics and polynomials. Rationals travel as
// "p/q" strings, floats as numbers and complex values as [re, im] pairs.
// Output is canonical: sorted keys, two-space indent, trailing newline.

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "premetric/area_operator.hpp"
#include "premetric/metric.hpp"
#include "premetric/multipoly.hpp"

namespace premetric::io {

using nlohmann::json;

enum class ScalarKind { Rational, Float, Complex };

std::string to_string(ScalarKind k);
ScalarKind scalar_kind_from_string(const std::string& s);

using AnyOperator = std::variant<AreaOperator<Rational>, AreaOperator<double>, AreaOperator<Complex>>;

struct Medium {
  std::string format = "kappa6";  // kappa6 | blocks | components
  ScalarKind scalar = ScalarKind::Rational;
  AnyOperator kappa = AreaOperator<Rational>();
};

json scalar_to_json(const Rational& x);
json scalar_to_json(double x);
json scalar_to_json(const Complex& x);

template <class T>
T scalar_from_json(const json& j);
template <>
Rational scalar_from_json<Rational>(const json& j);
template <>
double scalar_from_json<double>(const json& j);
template <>
Complex scalar_from_json<Complex>(const json& j);

template <class T, std::size_t R, std::size_t C>
json matrix_to_json(const Mat<T, R, C>& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(scalar_to_json(x));
    out.push_back(std::move(r));
  }
  return out;
}

template <class T, std::size_t N>
json vector_to_json(const Vec<T, N>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

template <class T, std::size_t R, std::size_t C>
Mat<T, R, C> matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != R) throw Error(ErrorCode::ParseError, "expected " + std::to_string(R) + " rows");
  Mat<T, R, C> m;
  for (std::size_t r = 0; r < R; ++r) {
    if (!j[r].is_array() || j[r].size() != C) throw Error(ErrorCode::ParseError, "expected " + std::to_string(C) + " columns");
    for (std::size_t c = 0; c < C; ++c) m[r][c] = scalar_from_json<T>(j[r][c]);
  }
  return m;
}

Medium parse_medium(const json& j);
json medium_to_json(const Medium& m);
template <class T>
Medium make_medium(const AreaOperator<T>& k, std::string format = "kappa6");

Mat<Rational, 4> parse_metric_json(const json& j);
/// "minkowski", "euclidean", "diag:a,b,c,d" or a path to a metric file.
Mat<Rational, 4> parse_metric_spec(const std::string& spec);
template <class T>
json metric_to_json(const Metric4<T>& g) {
  return json{{"g", matrix_to_json(g.g())}};
}

json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const json& j);
/// {"variables": [...], "polynomials": [[[coeff, [e...]], ...], ...]}
std::vector<MultiPoly> polys_from_json(const json& j);
json polys_to_json(const std::vector<MultiPoly>& ps);

/// Comma separated rationals such as "1,0,1/2".
std::vector<Rational> parse_rational_list(const std::string& text);

json read_json_file(const std::string& path);
std::string dump(const json& j);  // canonical text with trailing newline

}  // namespace premetric::io
