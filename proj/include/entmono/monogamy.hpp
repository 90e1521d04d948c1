#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entmono/errors.hpp"
#include "entmono/measures.hpp"

namespace entmono {

inline constexpr double kMonogamySlack = 1e-9;

enum class MonogamyKind { Concurrence, Fef, Fidelity };

std::string_view to_string(MonogamyKind kind);

struct PairTerm {
  std::size_t partner = 0;  // 0-based subsystem index
  double raw = 0.0;
  double clamped = 0.0;
  double squared = 0.0;  // (C)^2, (2F - 1)^2 or (3f - 2)^2 of the clamped value
};

/// lhs_value^2 >= sum of squared pair terms, where lhs_value is C, 2F - 1 or
/// 3f - 2 of the focus qubit against the rest (lhs_raw holds C, F or f).
struct MonogamyReport {
  MonogamyKind kind = MonogamyKind::Concurrence;
  std::size_t focus = 0;
  double lhs_raw = 0.0;
  double lhs_value = 0.0;
  std::vector<PairTerm> pair_terms;
  double rhs_sum = 0.0;
  double residual = 0.0;
  bool holds = true;
};

/// Coffman-Kundu-Wootters residual C_1(rest)^2 - sum_j C_1j^2 for an n-qubit
/// pure state, 3 <= n <= 5. `focus` is 0-based.
MonogamyReport ckw_residual(const PureState& psi, std::size_t focus = 0);

/// (2F_1(rest) - 1)^2 - sum_j (2 max(F_1j, 1/2) - 1)^2.
MonogamyReport fef_monogamy_residual(const PureState& psi, std::size_t focus = 0);

/// (3f_1(rest) - 2)^2 - sum_j (3 max(f_1j, 2/3) - 2)^2.
MonogamyReport fidelity_monogamy_residual(const PureState& psi, std::size_t focus = 0);

/// One gamma of the mixed-state counterexample. Raw values are unclamped;
/// the violation flags clamp both sides (1/2 for F, 2/3 for f).
struct CounterexampleRow {
  double gamma = 0.0;
  double alpha = 0.0;
  double F_1_23 = 0.0;  // optimizer, sigma_gamma as [2,4]
  double F_12 = 0.0;
  double F_13 = 0.0;
  double f_1_23 = 0.0;
  double f_13 = 0.0;
  double C_13 = 0.0;
  // Closed forms for the (1,3) reduction: Bell-diagonal with top weight
  // max(alpha + gamma, 2 alpha).
  double F_13_closed = 0.0;
  double f_13_closed = 0.0;
  double C_13_closed = 0.0;
  bool fef_violated = false;
  bool fid_violated = false;
  bool strictness_proxy = false;        // C_13 > 2 F_1_23 - 1
  bool unclamped_lhs_below_13 = false;  // (2F_1_23 - 1)^2 < (2F_13 - 1)^2, no clamps
  int optimizer_iterations = 0;
  std::optional<std::string> error;
};

/// Thrown by counterexample_row when the optimizer fails; carries the row
/// filled as far as it got.
class CounterexampleError : public NumericError {
 public:
  CounterexampleError(const std::string& what, CounterexampleRow partial)
      : NumericError(what, partial.F_1_23), partial_(std::move(partial)) {}
  const CounterexampleRow& partial() const noexcept { return partial_; }

 private:
  CounterexampleRow partial_;
};

CounterexampleRow counterexample_row(double gamma, int restarts = 32, std::uint64_t seed = 42,
                                     double tol = 1e-10);

/// Independent rows, in grid order. Row i uses derive_seed(seed, i); rows
/// that fail carry `error` and whatever was computed.
std::vector<CounterexampleRow> gamma_sweep(const std::vector<double>& grid, int restarts = 32,
                                           std::uint64_t seed = 42, double tol = 1e-10);

}  // namespace entmono
