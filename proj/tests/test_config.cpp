#include <doctest.h>

#include <json.hpp>

#include "fsol/config.hpp"

using namespace fsol;

TEST_SUITE_BEGIN("config");

TEST_CASE("full config parses") {
  const char* text = R"({
    "dimension": 2,
    "coeffs": [[4, 0], [-5, 0], [1, 0]],
    "frame": {"Q": [[1, 0], [0, 1]], "W": [1, 2], "b": [0.1, -0.2], "c": [0.3, 0]},
    "testfn": [{"center": [0.5, 0], "width": 1.1, "frequency": [0, 0.2],
                "monomials": [{"alpha": [1, 0], "coeff": [1, 0]}]}],
    "source": [{"type": "point", "location": [0, 0], "alpha": [0, 0], "weight": [1, 0]},
               {"type": "gaussian", "center": [0.3, 0], "width": 0.5}],
    "quadrature": {"sphere_order": 48, "panel_width": 0.5, "tail_tol": 1e-15},
    "grid": {"extent": 4.0, "resolution": 21, "ks": [1, 2]},
    "surface": {"center": [0, 0], "radius": 2.0, "num_samples": 16, "mollifier_width": 0.1},
    "output": {"path": "out.csv", "format": "csv"}
  })";
  RunConfig cfg = parse_config(text);
  CHECK(cfg.require_symbol().dim() == 2);
  CHECK(cfg.require_symbol().power_degree() == 2);
  CHECK(cfg.testfns.size() == 1);
  CHECK(cfg.testfns[0].atoms.size() == 1);
  CHECK(cfg.source.terms.size() == 2);
  CHECK(cfg.quadrature.sphere_order == 48);
  CHECK(cfg.quadrature.panel_width == 0.5);
  REQUIRE(cfg.grid.has_value());
  CHECK(cfg.grid->resolution == 21);
  REQUIRE(cfg.surface.has_value());
  CHECK(cfg.surface->num_samples == 16);
  CHECK(cfg.output.path == "out.csv");
}

TEST_CASE("defaults fill in") {
  RunConfig cfg = parse_config(R"({"dimension": 3, "coeffs": [0, 1]})");
  CHECK(cfg.require_symbol().dim() == 3);
  CHECK(cfg.source.terms.size() == 1);  // delta at the origin
  TestFunction f = cfg.default_testfn();
  CHECK(f.atoms.size() == 1);
}

TEST_CASE("malformed configs name the offending key") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"coeffs": [0, 1]})"),
                       doctest::Contains("dimension"), Error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"dimension": 2, "coeffs": "x"})"),
                       doctest::Contains("coeffs"), Error);
  CHECK_THROWS_WITH_AS(parse_config(R"({"dimension": 2, "coeffs": [0, 1],
                          "frame": {"W": [1, -1]}})"),
                       doctest::Contains("positive"), Error);
  CHECK_THROWS_AS(parse_config("not json at all"), Error);
}

TEST_CASE("full-precision round trip through the json emitter") {
  const double samples[] = {1.0 / 3.0, 0.1, 123456.789012345678, 2.2250738585072014e-308};
  for (double v : samples) {
    nlohmann::json j = v;
    double back = nlohmann::json::parse(j.dump()).get<double>();
    CHECK(back == v);
    // the human emitter at 17 significant digits round-trips too
    CHECK(std::stod(format_full(v)) == v);
  }
}

TEST_SUITE_END();
