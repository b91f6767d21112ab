#include "premetric/io.hpp"

#include <fstream>
#include <sstream>

namespace premetric::io {

std::string to_string(ScalarKind k) {
  switch (k) {
    case ScalarKind::Rational: return "rational";
    case ScalarKind::Float: return "float";
    case ScalarKind::Complex: return "complex";
  }
  return "rational";
}

ScalarKind scalar_kind_from_string(const std::string& s) {
  if (s == "rational") return ScalarKind::Rational;
  if (s == "float") return ScalarKind::Float;
  if (s == "complex") return ScalarKind::Complex;
  throw Error(ErrorCode::ParseError, "unknown scalar kind '" + s + "'");
}

json scalar_to_json(const Rational& x) { return format_rational(x); }
json scalar_to_json(double x) { return x; }
json scalar_to_json(const Complex& x) { return json::array({x.real(), x.imag()}); }

template <>
Rational scalar_from_json<Rational>(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  throw Error(ErrorCode::ParseError, "rational values must be \"p/q\" strings or integers, got " + j.dump());
}

template <>
double scalar_from_json<double>(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>()).get_d();
  throw Error(ErrorCode::ParseError, "expected a number, got " + j.dump());
}

template <>
Complex scalar_from_json<Complex>(const json& j) {
  if (j.is_array() && j.size() == 2) return Complex(scalar_from_json<double>(j[0]), scalar_from_json<double>(j[1]));
  return Complex(scalar_from_json<double>(j), 0.0);
}

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing key '") + key + "'");
  return j.at(key);
}

template <class T>
AreaOperator<T> parse_payload(const std::string& format, const json& j) {
  if (format == "kappa6") return AreaOperator<T>(matrix_from_json<T, 6, 6>(require(j, "kappa")));
  if (format == "blocks") {
    const json& b = require(j, "blocks");
    ABCDBlocks<T> blocks;
    blocks.A = matrix_from_json<T, 3, 3>(require(b, "A"));
    blocks.B = matrix_from_json<T, 3, 3>(require(b, "B"));
    blocks.C = matrix_from_json<T, 3, 3>(require(b, "C"));
    blocks.D = matrix_from_json<T, 3, 3>(require(b, "D"));
    return kappa_from_blocks(blocks);
  }
  if (format == "components") {
    std::vector<ComponentEntry<T>> entries;
    for (const auto& e : require(j, "components")) {
      if (!e.is_array() || e.size() != 5) throw Error(ErrorCode::ParseError, "component entries are [i, j, k, l, value]");
      for (std::size_t n = 0; n < 4; ++n)
        if (!e[n].is_number_integer()) throw Error(ErrorCode::ParseError, "component indices must be integers");
      entries.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>(), scalar_from_json<T>(e[4])});
    }
    return kappa_from_components(entries);
  }
  throw Error(ErrorCode::ParseError, "unknown medium format '" + format + "'");
}

template <class T>
json payload_to_json(const std::string& format, const AreaOperator<T>& k) {
  if (format == "kappa6") return json{{"kappa", matrix_to_json(k.matrix())}};
  if (format == "blocks") {
    const auto b = blocks_from_kappa(k);
    return json{{"blocks", {{"A", matrix_to_json(b.A)}, {"B", matrix_to_json(b.B)}, {"C", matrix_to_json(b.C)}, {"D", matrix_to_json(b.D)}}}};
  }
  json list = json::array();
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
          const T v = k.component(i, j, a, b);
          if (!ScalarTraits<T>::is_zero(v)) list.push_back(json::array({i, j, a, b, scalar_to_json(v)}));
        }
  return json{{"components", list}};
}

}  // namespace

Medium parse_medium(const json& j) {
  Medium m;
  m.format = require(j, "format").get<std::string>();
  m.scalar = scalar_kind_from_string(require(j, "scalar").get<std::string>());
  switch (m.scalar) {
    case ScalarKind::Rational: m.kappa = parse_payload<Rational>(m.format, j); break;
    case ScalarKind::Float: m.kappa = parse_payload<double>(m.format, j); break;
    case ScalarKind::Complex: m.kappa = parse_payload<Complex>(m.format, j); break;
  }
  return m;
}

json medium_to_json(const Medium& m) {
  json out = std::visit([&](const auto& k) { return payload_to_json(m.format, k); }, m.kappa);
  out["format"] = m.format;
  out["scalar"] = to_string(m.scalar);
  return out;
}

template <class T>
Medium make_medium(const AreaOperator<T>& k, std::string format) {
  Medium m;
  m.format = std::move(format);
  if constexpr (std::is_same_v<T, Rational>)
    m.scalar = ScalarKind::Rational;
  else if constexpr (std::is_same_v<T, double>)
    m.scalar = ScalarKind::Float;
  else
    m.scalar = ScalarKind::Complex;
  m.kappa = k;
  return m;
}

template Medium make_medium(const AreaOperator<Rational>&, std::string);
template Medium make_medium(const AreaOperator<double>&, std::string);
template Medium make_medium(const AreaOperator<Complex>&, std::string);

Mat<Rational, 4> parse_metric_json(const json& j) { return matrix_from_json<Rational, 4, 4>(require(j, "g")); }

Mat<Rational, 4> parse_metric_spec(const std::string& spec) {
  if (spec == "minkowski") return Metric4<Rational>::minkowski().g();
  if (spec == "euclidean") return identity<Rational, 4>();
  if (spec.rfind("diag:", 0) == 0) {
    const auto d = parse_rational_list(spec.substr(5));
    if (d.size() != 4) throw Error(ErrorCode::ParseError, "diag: needs four entries");
    return diagonal<Rational, 4>({d[0], d[1], d[2], d[3]});
  }
  return parse_metric_json(read_json_file(spec));
}

json poly_to_json(const MultiPoly& p) {
  json terms = json::array();
  const std::size_t n = p.nvars();
  for (const auto& t : p.terms()) {
    json e = json::array();
    for (std::size_t k = 0; k < n; ++k) e.push_back(t.exp[k]);
    terms.push_back(json::array({format_rational(t.coeff), e}));
  }
  json vars = json::array();
  if (p.vars())
    for (const auto& v : p.vars()->names) vars.push_back(v);
  return json{{"variables", vars}, {"terms", terms}};
}

namespace {

MultiPoly terms_from_json(const VarTablePtr& vars, const json& terms) {
  if (!terms.is_array()) throw Error(ErrorCode::ParseError, "terms must be a list");
  const std::size_t n = vars->names.size();
  std::vector<Term> ts;
  for (const auto& t : terms) {
    if (!t.is_array() || t.size() != 2 || !t[1].is_array() || t[1].size() != n)
      throw Error(ErrorCode::ParseError, "terms are [coeff, [e1, ..., eN]] with N = " + std::to_string(n));
    Term term;
    term.coeff = scalar_from_json<Rational>(t[0]);
    for (std::size_t k = 0; k < n; ++k) {
      const long e = t[1][k].get<long>();
      if (e < 0 || e > 255) throw Error(ErrorCode::ParseError, "exponents must lie in 0..255");
      term.exp[k] = static_cast<std::uint8_t>(e);
    }
    ts.push_back(std::move(term));
  }
  return MultiPoly::from_terms(vars, std::move(ts));
}

VarTablePtr vars_from_json(const json& j) { return make_vars(require(j, "variables").get<std::vector<std::string>>()); }

}  // namespace

MultiPoly poly_from_json(const json& j) { return terms_from_json(vars_from_json(j), require(j, "terms")); }

std::vector<MultiPoly> polys_from_json(const json& j) {
  const auto vars = vars_from_json(j);
  std::vector<MultiPoly> out;
  for (const auto& p : require(j, "polynomials")) out.push_back(terms_from_json(vars, p));
  return out;
}

json polys_to_json(const std::vector<MultiPoly>& ps) {
  json vars = json::array();
  json list = json::array();
  for (const auto& p : ps) {
    if (vars.empty() && p.vars())
      for (const auto& v : p.vars()->names) vars.push_back(v);
    list.push_back(poly_to_json(p)["terms"]);
  }
  return json{{"variables", vars}, {"polynomials", list}};
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_rational(item));
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace premetric::io
