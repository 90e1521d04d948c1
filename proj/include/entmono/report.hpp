#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entmono/monogamy.hpp"

namespace entmono {

/// Fixed CSV header for counterexample rows. Column order is stable.
inline constexpr std::string_view kCounterexampleCsvHeader =
    "gamma,alpha,F_1_23,F_12,F_13,F_13_closed,f_1_23,f_13,f_13_closed,C_13,C_13_closed,"
    "fef_violated,fid_violated,strictness_proxy,unclamped_lhs_below_13,"
    "F_13_rational,f_13_rational,C_13_rational,error";

/// Full round-trip precision (17 significant digits).
std::string format_full(double x);

/// p/q with q <= max_denominator reproducing x to 1e-15, if one exists.
std::optional<std::pair<std::int64_t, std::int64_t>> rational_approx(
    double x, std::int64_t max_denominator = 1000000);

std::string counterexample_csv(const std::vector<CounterexampleRow>& rows);
std::string counterexample_json(const std::vector<CounterexampleRow>& rows);
/// Human-readable table, 6 decimals.
std::string counterexample_table(const std::vector<CounterexampleRow>& rows);

}  // namespace entmono
