#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "premetric/fixtures.hpp"
#include "premetric/io.hpp"

using namespace premetric;
using namespace premetric::io;

namespace {

std::string fixture_path(const std::string& name) { return std::string(PREMETRIC_FIXTURE_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AreaOperator<Rational> rational_fixture(const std::string& name) {
  const Medium m = parse_medium(read_json_file(fixture_path(name)));
  REQUIRE(m.scalar == ScalarKind::Rational);
  return std::get<AreaOperator<Rational>>(m.kappa);
}

}  // namespace

TEST_CASE("every fixture round-trips byte for byte") {
  int media = 0;
  for (const auto& entry : std::filesystem::directory_iterator(PREMETRIC_FIXTURE_DIR)) {
    if (entry.path().extension() != ".json") continue;
    const std::string path = entry.path().string();
    const std::string text = slurp(path);
    const json j = json::parse(text);
    CAPTURE(path);
    std::string again;
    if (j.contains("format")) {
      again = dump(medium_to_json(parse_medium(j)));
      ++media;
    } else if (j.contains("g")) {
      again = dump(metric_to_json(Metric4<Rational>(parse_metric_json(j))));
    } else {
      again = dump(polys_to_json(polys_from_json(j)));
    }
    CHECK(again == text);
  }
  CHECK(media >= 8);
}

TEST_CASE("fixtures hold the named media") {
  CHECK(rational_fixture("biaxial.json") == fixtures::biaxial());
  CHECK(rational_fixture("biaxial_components.json") == fixtures::biaxial());
  CHECK(rational_fixture("kappa1.json") == fixtures::kappa1());
  CHECK(rational_fixture("kappa2.json") == fixtures::kappa2());
  CHECK(rational_fixture("iso_e2_mu05.json") == fixtures::isotropic_e2_mu05());
  CHECK(rational_fixture("minkowski_star.json") == fixtures::minkowski_star());
  CHECK(parse_metric_spec(fixture_path("minkowski_metric.json")) == Metric4<Rational>::minkowski().g());

  const Medium z = parse_medium(read_json_file(fixture_path("complex_z.json")));
  REQUIRE(z.scalar == ScalarKind::Complex);
  const auto& kz = std::get<AreaOperator<Complex>>(z.kappa);
  const auto expect = fixtures::complex_medium(Complex(1, 1));
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 6; ++c) CHECK(std::abs(kz.matrix()[r][c] - expect.matrix()[r][c]) < 1e-15);

  const auto gens = polys_from_json(read_json_file(fixture_path("appendixA.json")));
  REQUIRE(gens.size() == 3);
  CHECK(gens[0].to_string() == "x*y*z - 1");
}

TEST_CASE("malformed input is a parse error") {
  auto code_of = [](const json& j) {
    try {
      parse_medium(j);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::PreconditionFailed;
  };
  CHECK(code_of(json{{"format", "kappa6"}, {"scalar", "rational"}}) == ErrorCode::ParseError);
  CHECK(code_of(json{{"format", "tensor"}, {"scalar", "rational"}, {"kappa", json::array()}}) == ErrorCode::ParseError);
  CHECK(code_of(json{{"format", "kappa6"}, {"scalar", "quaternion"}}) == ErrorCode::ParseError);
  CHECK(code_of(json{{"format", "kappa6"}, {"scalar", "rational"}, {"kappa", json::array({json::array({"1/0"})})}}) ==
        ErrorCode::ParseError);
  CHECK_THROWS_AS(parse_metric_spec("diag:1,2,3"), Error);
  CHECK_THROWS_AS(read_json_file(fixture_path("missing.json")), Error);
}

TEST_CASE("polynomial interchange keeps coefficients exact") {
  const auto vars = make_vars({"x", "y"});
  const auto x = MultiPoly::variable(vars, 0), y = MultiPoly::variable(vars, 1);
  const MultiPoly p = x * x * MultiPoly::constant(Rational(-7, 3), vars) + y - MultiPoly::constant(Rational(1, 2), vars);
  const json j = poly_to_json(p);
  CHECK(j["terms"][0][0] == "-7/3");
  CHECK(poly_from_json(j) == p);
}
