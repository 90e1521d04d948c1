// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "entmono/measures.hpp"
#include "entmono/monogamy.hpp"
#include "entmono/random.hpp"
#include "entmono/states.hpp"
#include "entmono/telesim.hpp"

using namespace entmono;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

const std::vector<double> kGrid = {0.2, 0.5, 0.75, 0.9, 0.99};

Outcome fef_of_sigma() {
  Outcome o;
  double worst = 0.0, slowest = 0.0;
  for (double g : kGrid) {
    const auto rho = sigma_gamma_state(SigmaGammaParams(g)).with_dims({2, 4});
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = fef_2xd(rho, FefOptions{32, 1e-10, 42});
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    worst = std::max(worst, std::abs(r.value - g));
    slowest = std::max(slowest, secs);
  }
  o.pass = worst <= 1e-6 && slowest < 1.0;
  o.detail = fmt("max |F - gamma| = %.2e, slowest point %.3f s", worst, slowest);
  return o;
}

Outcome pair_fef_and_fidelity() {
  double worst_f = 0.0, worst_t = 0.0;
  for (double g : kGrid) {
    const auto pair = sigma_gamma_pair(SigmaGammaParams(g), PartyPair::P13);
    worst_f = std::max(worst_f, std::abs(fef_two_qubit(pair).value - (6 * g + 1) / 7));
    worst_t = std::max(worst_t,
                       std::abs(exact_average_fidelity(build_channel(pair)) - (4 * g + 3) / 7));
  }
  return {worst_f <= 1e-12 && worst_t <= 1e-9,
          fmt("max |F_13 - (6g+1)/7| = %.2e, max |f_13 - (4g+3)/7| = %.2e", worst_f, worst_t)};
}

Outcome violation_flags() {
  Outcome o;
  int bad = 0;
  for (double g : {0.5, 0.6, 0.75, 0.9, 0.99}) {
    const auto r = counterexample_row(g);
    if (!r.fef_violated || !r.fid_violated) ++bad;
  }
  const auto one = counterexample_row(1.0);
  const bool one_ok = !one.fef_violated && !one.fid_violated;
  o.pass = bad == 0 && one_ok;
  o.detail = std::to_string(5 - bad) + "/5 violated for gamma < 1; gamma = 1 " +
             (one_ok ? "not violated" : "VIOLATED");
  return o;
}

Outcome strictness() {
  double min_margin = 1e9, worst_c = 0.0;
  for (double g : {0.5, 0.75, 0.9, 0.99}) {
    const auto pair = sigma_gamma_pair(SigmaGammaParams(g), PartyPair::P13);
    const double c = concurrence_two_qubit(pair);
    const double closed = (12 * g - 5) / 7;
    worst_c = std::max(worst_c, std::abs(c - closed));
    min_margin = std::min(min_margin, c - (2 * g - 1));
  }
  return {min_margin >= 1e-9 && worst_c <= 1e-12,
          fmt("min margin C_13 - (2g-1) = %.3e, max |C - (12g-5)/7| = %.2e", min_margin, worst_c)};
}

Outcome pure_monogamy() {
  double min_res = 1e9, max_gap = 0.0;
  auto run = [&](std::size_t n, int count, std::uint64_t base) {
    for (int s = 0; s < count; ++s) {
      const auto psi = haar_pure(Dims(n, 2), derive_seed(base, static_cast<std::uint64_t>(s)));
      const auto c = ckw_residual(psi);
      const auto f = fef_monogamy_residual(psi);
      const auto t = fidelity_monogamy_residual(psi);
      min_res = std::min({min_res, c.residual, f.residual, t.residual});
      max_gap = std::max(max_gap, std::abs(f.residual - t.residual));
    }
  };
  run(3, 200, 3);
  run(4, 50, 4);
  return {min_res >= -1e-9 && max_gap <= 1e-12,
          fmt("min residual %.3e, max |fef - fidelity residual| %.2e", min_res, max_gap)};
}

Outcome pure_identities() {
  double worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    const std::size_t d = 2 + static_cast<std::size_t>(s % 3);
    const auto phi = haar_pure({2, d}, derive_seed(6, static_cast<std::uint64_t>(s)));
    const double c = concurrence_pure(phi);
    const double f = fef_pure(phi);
    const double t = fidelity_from_fef(f);
    worst = std::max({worst, std::abs(c - (2 * f - 1)), std::abs(c - (3 * t - 2))});
  }
  return {worst <= 1e-10, fmt("max deviation %.2e over 200 states", worst)};
}

Outcome mixed_bound() {
  double min_gap = 1e9;
  for (int s = 0; s < 500; ++s) {
    const auto rho = random_density({2, 2}, derive_seed(7, static_cast<std::uint64_t>(s)));
    min_gap = std::min(min_gap, concurrence_two_qubit(rho) - (2 * fef_two_qubit(rho).value - 1));
  }
  double max_excess = -1e9;
  Rng rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 100; ++s) {
    const auto a = random_density({2, 2}, derive_seed(70, static_cast<std::uint64_t>(s)));
    const auto b = random_density({2, 2}, derive_seed(71, static_cast<std::uint64_t>(s)));
    const double t = u(rng);
    const auto mix = DensityOperator::from_matrix(t * a.matrix() + (1 - t) * b.matrix(), {2, 2});
    max_excess = std::max(max_excess, fef_two_qubit(mix).value - t * fef_two_qubit(a).value -
                                          (1 - t) * fef_two_qubit(b).value);
  }
  return {min_gap >= -1e-9 && max_excess <= 1e-9,
          fmt("min C - (2F-1) = %.3e, max convexity excess %.2e", min_gap, max_excess)};
}

Outcome operator_transfer() {
  const auto tilde = tilde_bell_state(BellKind::PhiPlus);
  const auto phi = tilde.amplitudes();
  Rng rng(8);
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    const auto a = gaussian_matrix(2, 2, rng);
    const auto b = gaussian_matrix(4, 4, rng);
    const auto lhs = kron(a, b) * phi;
    const auto rhs = kron(ComplexMatrix::identity(2), b * embed_qubit_op(a).transpose()) * phi;
    worst = std::max(worst, max_abs_diff(lhs, rhs));
  }
  return {worst <= 1e-12, fmt("max deviation %.2e over 100 pairs", worst)};
}

Outcome teleportation() {
  int consistent = 0;
  for (int s = 0; s < 20; ++s) {
    const auto rho = random_density({2, 2}, derive_seed(9, static_cast<std::uint64_t>(s)));
    if (mc_average_fidelity(build_channel(rho), 100000, derive_seed(90, s)).consistent()) {
      ++consistent;
    }
  }
  double worst = 0.0;
  for (int s = 0; s < 50; ++s) {
    const auto rho = random_density({2, 2}, derive_seed(91, static_cast<std::uint64_t>(s)));
    const double exact = exact_average_fidelity(build_channel(rho));
    worst = std::max(worst, std::abs(exact - (2 * fef_two_qubit(rho).value + 1) / 3));
  }
  return {consistent >= 19 && worst <= 1e-9,
          std::to_string(consistent) + "/20 within 4 std errors" +
              fmt(", max |f - (2F+1)/3| = %.2e", worst)};
}

Outcome optimizer_cross_check() {
  double worst = 0.0;
  for (int s = 0; s < 200; ++s) {
    const auto rho = random_density({2, 2}, derive_seed(10, static_cast<std::uint64_t>(s)));
    worst = std::max(worst, std::abs(fef_2xd(rho).value - fef_two_qubit(rho).value));
  }
  return {worst <= 1e-8, fmt("max |fef_2xd - magic basis| = %.2e over 200 states", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"F(sigma_gamma) = gamma in 2x4", fef_of_sigma},
      {"pair FEF and teleportation fidelity closed forms", pair_fef_and_fidelity},
      {"FEF and fidelity monogamy violated for gamma < 1", violation_flags},
      {"C_13 exceeds 2 F_1(23) - 1", strictness},
      {"pure-state monogamy residuals", pure_monogamy},
      {"pure-state C = 2F - 1 = 3f - 2", pure_identities},
      {"mixed-state C >= 2F - 1 and convexity", mixed_bound},
      {"(A x B)|phi~+> = (I x B A~^T)|phi~+>", operator_transfer},
      {"teleportation Monte Carlo vs exact", teleportation},
      {"fef_2xd vs magic basis at d = 2", optimizer_cross_check},
  };
  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria passed in %.1f s\n",
              static_cast<int>(criteria.size()) - failures, criteria.size(), total);
  return failures == 0 ? 0 : 1;
}
