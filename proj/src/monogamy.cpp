#include "entmono/monogamy.hpp"

#include <algorithm>
#include <cmath>

#include "entmono/random.hpp"
#include "parallel.hpp"

namespace entmono {

namespace {

struct Reductions {
  std::vector<std::size_t> partners;     // original indices
  std::vector<DensityOperator> pairs;    // focus first
};

void require_qubits(const PureState& psi, std::size_t focus) {
  const auto& dims = psi.dims();
  if (dims.size() < 3 || dims.size() > 5) {
    throw ArgumentError("monogamy residuals need 3 to 5 qubits");
  }
  if (std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d != 2; })) {
    throw ArgumentError("monogamy residuals need qubit subsystems only");
  }
  if (focus >= dims.size()) throw ArgumentError("focus index out of range");
}

Reductions pair_reductions(const PureState& reordered, std::size_t focus) {
  Reductions out;
  const auto full = DensityOperator::from_pure(reordered);
  const std::size_t n = reordered.dims().size();
  for (std::size_t j = 1; j < n; ++j) {
    // Position j of the reordered state is original subsystem j-1 when j <= focus.
    out.partners.push_back(j <= focus ? j - 1 : j);
    out.pairs.push_back(full.reduced({0, j}));
  }
  return out;
}

void finish(MonogamyReport& r) {
  r.rhs_sum = 0.0;
  for (const auto& t : r.pair_terms) r.rhs_sum += t.squared;
  r.residual = r.lhs_value * r.lhs_value - r.rhs_sum;
  r.holds = r.residual >= -kMonogamySlack;
}

double square(double x) { return x * x; }

}  // namespace

std::string_view to_string(MonogamyKind kind) {
  switch (kind) {
    case MonogamyKind::Concurrence: return "concurrence";
    case MonogamyKind::Fef: return "fef";
    case MonogamyKind::Fidelity: return "fidelity";
  }
  return "?";
}

MonogamyReport ckw_residual(const PureState& psi, std::size_t focus) {
  require_qubits(psi, focus);
  const auto reordered = move_subsystem_to_front(psi, focus);
  const auto red = pair_reductions(reordered, focus);
  MonogamyReport r;
  r.kind = MonogamyKind::Concurrence;
  r.focus = focus;
  r.lhs_raw = concurrence_pure(reordered, 1);
  r.lhs_value = r.lhs_raw;
  for (std::size_t k = 0; k < red.pairs.size(); ++k) {
    const double c = concurrence_two_qubit(red.pairs[k]);
    r.pair_terms.push_back({red.partners[k], c, c, c * c});
  }
  finish(r);
  return r;
}

MonogamyReport fef_monogamy_residual(const PureState& psi, std::size_t focus) {
  require_qubits(psi, focus);
  const auto reordered = move_subsystem_to_front(psi, focus);
  const auto red = pair_reductions(reordered, focus);
  MonogamyReport r;
  r.kind = MonogamyKind::Fef;
  r.focus = focus;
  r.lhs_raw = fef_pure(reordered, 1);
  r.lhs_value = 2.0 * r.lhs_raw - 1.0;
  for (std::size_t k = 0; k < red.pairs.size(); ++k) {
    const auto q = clamp_pair_quantities(fef_two_qubit(red.pairs[k]).value);
    r.pair_terms.push_back({red.partners[k], q.fef_raw, q.fef_clamped,
                            square(2.0 * q.fef_clamped - 1.0)});
  }
  finish(r);
  return r;
}

MonogamyReport fidelity_monogamy_residual(const PureState& psi, std::size_t focus) {
  require_qubits(psi, focus);
  const auto reordered = move_subsystem_to_front(psi, focus);
  const auto red = pair_reductions(reordered, focus);
  MonogamyReport r;
  r.kind = MonogamyKind::Fidelity;
  r.focus = focus;
  r.lhs_raw = fidelity_from_fef(fef_pure(reordered, 1));
  r.lhs_value = 3.0 * r.lhs_raw - 2.0;
  for (std::size_t k = 0; k < red.pairs.size(); ++k) {
    const auto q = clamp_pair_quantities(fef_two_qubit(red.pairs[k]).value);
    r.pair_terms.push_back({red.partners[k], q.fid_raw, q.fid_clamped,
                            square(3.0 * q.fid_clamped - 2.0)});
  }
  finish(r);
  return r;
}

CounterexampleRow counterexample_row(double gamma, int restarts, std::uint64_t seed, double tol) {
  const SigmaGammaParams params(gamma);
  CounterexampleRow row;
  row.gamma = gamma;
  row.alpha = params.alpha();

  const auto pair13 = sigma_gamma_pair(params, PartyPair::P13);
  const auto pair12 = sigma_gamma_pair(params, PartyPair::P12);
  row.F_13 = fef_two_qubit(pair13).value;
  row.F_12 = fef_two_qubit(pair12).value;
  row.f_13 = fidelity_from_fef(row.F_13);
  row.C_13 = concurrence_two_qubit(pair13);

  const double top = std::max(row.alpha + gamma, 2.0 * row.alpha);
  row.F_13_closed = top;
  row.f_13_closed = (2.0 * top + 1.0) / 3.0;
  row.C_13_closed = std::max(0.0, 2.0 * top - 1.0);

  const auto sigma = sigma_gamma_state(params).with_dims({2, 4});
  try {
    const auto fef = fef_2xd(sigma, FefOptions{restarts, tol, seed});
    row.F_1_23 = fef.value;
    row.optimizer_iterations = fef.iterations;
  } catch (const NumericError& e) {
    row.F_1_23 = e.best_so_far();
    row.error = e.what();
    throw CounterexampleError(e.what(), row);
  }
  row.f_1_23 = fidelity_from_fef(row.F_1_23);

  auto clamped_f = [](double x) { return std::max(x, 0.5); };
  auto clamped_t = [](double x) { return std::max(x, 2.0 / 3.0); };
  const double fef_lhs = square(2.0 * clamped_f(row.F_1_23) - 1.0);
  const double fef_rhs =
      square(2.0 * clamped_f(row.F_13) - 1.0) + square(2.0 * clamped_f(row.F_12) - 1.0);
  row.fef_violated = fef_lhs < fef_rhs - kMonogamySlack;

  const double f_12 = fidelity_from_fef(row.F_12);
  const double fid_lhs = square(3.0 * clamped_t(row.f_1_23) - 2.0);
  const double fid_rhs =
      square(3.0 * clamped_t(row.f_13) - 2.0) + square(3.0 * clamped_t(f_12) - 2.0);
  row.fid_violated = fid_lhs < fid_rhs - kMonogamySlack;

  row.strictness_proxy = row.C_13 > 2.0 * row.F_1_23 - 1.0 + kMonogamySlack;
  row.unclamped_lhs_below_13 =
      square(2.0 * row.F_1_23 - 1.0) < square(2.0 * row.F_13 - 1.0) - kMonogamySlack;
  return row;
}

std::vector<CounterexampleRow> gamma_sweep(const std::vector<double>& grid, int restarts,
                                           std::uint64_t seed, double tol) {
  std::vector<CounterexampleRow> rows(grid.size());
  detail::parallel_for(grid.size(), [&](std::size_t i) {
    try {
      rows[i] = counterexample_row(grid[i], restarts, derive_seed(seed, i), tol);
    } catch (const CounterexampleError& e) {
      rows[i] = e.partial();
    } catch (const Error& e) {
      rows[i].gamma = grid[i];
      rows[i].error = e.what();
    }
  });
  return rows;
}

}  // namespace entmono
