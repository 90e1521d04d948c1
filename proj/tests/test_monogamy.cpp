#include <doctest.h>

#include <cmath>

#include "entmono/errors.hpp"
#include "entmono/monogamy.hpp"
#include "oracles.hpp"

using namespace entmono;
using entmono::testing::concurrence_by_decomposition;
using entmono::testing::ghz3;
using entmono::testing::w3;

namespace {

PureState zero_phi_plus() {
  return PureState(kron(PureState::basis({2}, 0).amplitudes(),
                        bell_state(BellKind::PhiPlus).amplitudes()),
                   {2, 2, 2});
}

}  // namespace

TEST_CASE("CKW residual examples") {
  auto r = ckw_residual(ghz3());
  CHECK(r.lhs_value == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(r.pair_terms.size() == 2);
  CHECK(r.pair_terms[0].partner == 1);
  CHECK(r.pair_terms[1].partner == 2);
  for (const auto& t : r.pair_terms) CHECK(std::abs(t.raw) <= 1e-7);
  CHECK(r.residual == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.holds);

  // GHZ pair reductions are classical mixtures of |00>, |11>; the
  // decomposition oracle confirms zero concurrence.
  const auto pair = DensityOperator::from_pure(ghz3()).reduced({0, 1});
  CHECK(concurrence_by_decomposition(pair, 4, 3000, 1) <= 1e-9);

  r = ckw_residual(w3());
  CHECK(r.lhs_value * r.lhs_value == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  for (const auto& t : r.pair_terms) CHECK(t.squared == doctest::Approx(4.0 / 9.0).epsilon(1e-7));
  CHECK(std::abs(r.residual) <= 1e-7);
  CHECK(r.holds);
  const auto wpair = DensityOperator::from_pure(w3()).reduced({0, 2});
  CHECK(std::abs(concurrence_by_decomposition(wpair, 4, 3000, 2) - 2.0 / 3.0) <= 1e-3);

  r = ckw_residual(zero_phi_plus());
  CHECK(r.lhs_value == 0.0);
  for (const auto& t : r.pair_terms) CHECK(t.squared <= 1e-14);
  CHECK(std::abs(r.residual) <= 1e-12);
}

TEST_CASE("FEF and fidelity residual examples") {
  auto r = fef_monogamy_residual(ghz3());
  CHECK(r.lhs_raw == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& t : r.pair_terms) {
    CHECK(t.raw == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.squared == 0.0);
  }
  CHECK(r.residual == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.holds);

  r = fef_monogamy_residual(zero_phi_plus());
  CHECK(r.lhs_raw == doctest::Approx(0.5));
  CHECK(r.lhs_value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(r.residual) <= 1e-12);

  const auto f = fidelity_monogamy_residual(ghz3());
  CHECK(f.residual == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.kind == MonogamyKind::Fidelity);
  CHECK(std::abs(fidelity_monogamy_residual(zero_phi_plus()).residual) <= 1e-12);
}

TEST_CASE("monogamy holds on random pure states and the fidelity map is exact") {
  for (std::size_t n : {3u, 4u, 5u}) {
    const int trials = n == 3 ? 100 : 20;
    for (int s = 0; s < trials; ++s) {
      const auto psi = haar_pure(Dims(n, 2), 1000 * n + static_cast<std::uint64_t>(s));
      for (std::size_t focus : {std::size_t{0}, n - 1}) {
        const auto c = ckw_residual(psi, focus);
        const auto f = fef_monogamy_residual(psi, focus);
        const auto t = fidelity_monogamy_residual(psi, focus);
        CHECK(c.residual >= -1e-9);
        CHECK(f.residual >= -1e-9);
        CHECK(t.residual >= -1e-9);
        CHECK(std::abs(t.residual - f.residual) <= 1e-12);
        CHECK(c.pair_terms.size() == n - 1);
      }
    }
  }
}

TEST_CASE("residuals validate their input") {
  CHECK_THROWS_AS(ckw_residual(haar_pure({2, 3, 2}, 1)), ArgumentError);
  CHECK_THROWS_AS(ckw_residual(haar_pure({2, 2}, 1)), ArgumentError);
  CHECK_THROWS_AS(fef_monogamy_residual(haar_pure({2, 2, 2}, 1), 3), ArgumentError);
}

TEST_CASE("counterexample row at gamma 0.9") {
  const auto row = counterexample_row(0.9);
  CHECK(std::abs(row.F_1_23 - 0.9) <= 1e-6);
  CHECK(std::abs(row.F_13 - 6.4 / 7.0) <= 1e-12);
  CHECK(std::abs(row.f_13 - 6.6 / 7.0) <= 1e-9);
  CHECK(std::abs(row.f_1_23 - 2.8 / 3.0) <= 1e-6);
  CHECK(std::abs(row.C_13 - 5.8 / 7.0) <= 1e-12);
  CHECK(row.C_13 == doctest::Approx(row.C_13_closed).epsilon(1e-12));
  CHECK(row.alpha == doctest::Approx(0.1 / 7.0));
  CHECK(row.fef_violated);
  CHECK(row.fid_violated);
  CHECK(row.strictness_proxy);
  CHECK(row.unclamped_lhs_below_13);
  CHECK_FALSE(row.error.has_value());
}

TEST_CASE("counterexample row at gamma 1 is the equality case") {
  const auto row = counterexample_row(1.0);
  CHECK(std::abs(row.F_1_23 - 1.0) <= 1e-9);
  CHECK(std::abs(row.F_13 - 1.0) <= 1e-12);
  CHECK(row.F_12 <= 0.5 + 1e-12);
  CHECK_FALSE(row.fef_violated);
  CHECK_FALSE(row.fid_violated);
  CHECK_FALSE(row.strictness_proxy);
}

TEST_CASE("counterexample row below one half uses clamped sides") {
  // Clamped lhs: max(0.45, 1/2) = 1/2 gives 0; clamped F_13 = 3.7/7 > 1/2.
  const auto row = counterexample_row(0.45);
  CHECK(std::abs(row.F_1_23 - 0.45) <= 1e-6);
  CHECK(std::abs(row.F_13 - 3.7 / 7.0) <= 1e-12);
  const double lhs = std::pow(2.0 * std::max(row.F_1_23, 0.5) - 1.0, 2);
  const double rhs = std::pow(2.0 * std::max(row.F_12, 0.5) - 1.0, 2) +
                     std::pow(2.0 * std::max(row.F_13, 0.5) - 1.0, 2);
  CHECK(lhs < rhs);
  CHECK(row.fef_violated);
}

TEST_CASE("gamma sweep") {
  const auto rows = gamma_sweep({0.5, 0.75, 0.99, 1.0});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].fef_violated);
  CHECK(rows[1].fef_violated);
  CHECK(rows[2].fef_violated);
  CHECK_FALSE(rows[3].fef_violated);
  for (const auto& r : rows) CHECK_FALSE(r.error.has_value());

  // Rows are reproducible regardless of scheduling.
  const auto again = gamma_sweep({0.5, 0.75, 0.99, 1.0});
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].F_1_23 == again[i].F_1_23);

  CHECK_THROWS_AS(counterexample_row(1.5), ArgumentError);
}
