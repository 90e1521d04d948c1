#include <doctest.h>

#include <cmath>

#include "entmono/errors.hpp"
#include "entmono/state_io.hpp"
#include "entmono/states.hpp"

using namespace entmono;

TEST_CASE("parse a pure state") {
  const auto s = parse_state(R"({"dims":[2,2],"amplitudes":[[0.6,0],[0,0],[0,0],[0,0.8]]})");
  REQUIRE(std::holds_alternative<PureState>(s));
  const auto& psi = std::get<PureState>(s);
  CHECK(psi.dims() == Dims{2, 2});
  CHECK(psi.amplitudes()[3] == Complex(0, 0.8));
  CHECK(as_density(s).matrix()(0, 3) == Complex(0.6 * 0.0, -0.6 * 0.8));
}

TEST_CASE("parse a density operator") {
  const auto s = parse_state(R"({"dims":[2],"matrix":[[0.5,0],[0,0.5],[0,-0.5],[0.5,0]]})");
  REQUIRE(std::holds_alternative<DensityOperator>(s));
  CHECK(std::get<DensityOperator>(s).matrix()(0, 1) == Complex(0, 0.5));
}

TEST_CASE("structural problems are parse errors") {
  CHECK_THROWS_AS(parse_state("{"), ParseError);
  CHECK_THROWS_AS(parse_state("[]"), ParseError);
  CHECK_THROWS_AS(parse_state(R"({"amplitudes":[[1,0]]})"), ParseError);
  CHECK_THROWS_AS(parse_state(R"({"dims":[2],"amplitudes":[[1,0],[0]]})"), ParseError);
  CHECK_THROWS_AS(parse_state(R"({"dims":[2],"amplitudes":[[1,0],["a",0]]})"), ParseError);
  CHECK_THROWS_AS(parse_state(R"({"dims":[0],"amplitudes":[]})"), ParseError);
  CHECK_THROWS_AS(parse_state(R"({"dims":[2],"amplitudes":[[1,0],[0,0]],"matrix":[]})"),
                  ParseError);
  CHECK_THROWS_AS(read_state_file("/nonexistent/state.json"), ParseError);
}

TEST_CASE("invariant violations are argument errors naming the invariant") {
  try {
    parse_state(R"({"dims":[2],"matrix":[[0.7,0],[0,0],[0,0],[0.7,0]]})");
    FAIL("expected ArgumentError");
  } catch (const ArgumentError& e) {
    CHECK(std::string(e.what()).find("trace") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_state(R"({"dims":[2],"amplitudes":[[1,0],[1,0]]})"), ArgumentError);
}

TEST_CASE("json round trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_density({2, 3}, seed);
    const auto back = std::get<DensityOperator>(parse_state(to_json(rho)));
    CHECK(back.dims() == rho.dims());
    CHECK(back.matrix() == rho.matrix());

    const auto psi = haar_pure({2, 2, 2}, seed);
    const auto pback = std::get<PureState>(parse_state(to_json(psi)));
    CHECK(max_abs_diff(pback.amplitudes(), psi.amplitudes()) == 0.0);
  }
}
