#include "entmono/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <array>
#include <string>

#include "entmono/errors.hpp"
#include "entmono/random.hpp"

namespace entmono {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// det of the 2x2 reduced state on the leading `split` subsystems.
double reduced_det(const PureState& phi, std::size_t split) {
  const auto& dims = phi.dims();
  if (split == 0 || split >= dims.size()) {
    throw ArgumentError("split must leave both factors nonempty");
  }
  const std::size_t first =
      product(Dims(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(split)));
  if (first != 2) throw ArgumentError("first factor of the split must be 2-dimensional");
  const std::size_t d = phi.dimension() / 2;
  const auto a = phi.amplitudes();
  double r00 = 0.0, r11 = 0.0;
  Complex r01{};
  for (std::size_t k = 0; k < d; ++k) {
    r00 += std::norm(a[k]);
    r11 += std::norm(a[d + k]);
    r01 += a[k] * std::conj(a[d + k]);
  }
  return std::clamp(r00 * r11 - std::norm(r01), 0.0, 0.25);
}

void require_two_qubit(const DensityOperator& rho) {
  if (rho.dims() != Dims{2, 2}) throw ArgumentError("expected a two-qubit state with dims [2,2]");
}

double sqrt_psd(double x) { return x > 1e-14 ? std::sqrt(x) : 0.0; }

const ComplexMatrix& yy() {
  static const ComplexMatrix m{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}};
  return m;
}

// Magic basis {phi+, i phi-, i psi+, psi-} as columns.
const ComplexMatrix& magic_basis() {
  static const ComplexMatrix m = [] {
    const double s = kInvSqrt2;
    const Complex is{0.0, s};
    return ComplexMatrix{{s, is, 0, 0}, {0, 0, is, s}, {0, 0, is, -s}, {s, -is, 0, 0}};
  }();
  return m;
}

// <e|rho|e> for e = vec(X)/sqrt2, X a d x 2 isometry stacked column-major.
double objective(const ComplexMatrix& rho, const ComplexMatrix& x) {
  const std::size_t d = x.rows();
  std::vector<Complex> e(2 * d);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < d; ++k) e[i * d + k] = x(k, i) * kInvSqrt2;
  }
  return expectation(rho, e).real();
}

struct RestartOutcome {
  double value;
  ComplexMatrix x;
  int iterations;
  bool converged;
};

RestartOutcome ascend(const ComplexMatrix& rho, std::size_t d, std::uint64_t seed,
                      const FefOptions& opt) {
  Rng rng(seed);
  ComplexMatrix x = haar_isometry(d, 2, rng);
  double f = objective(rho, x);
  int small_gains = 0;
  int it = 0;
  double prev_gain = 0.0;
  for (; it < opt.max_iterations; ++it) {
    // Euclidean gradient of (1/2) x^dag rho x is rho x, reshaped to d x 2.
    std::vector<Complex> flat(2 * d);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < d; ++k) flat[i * d + k] = x(k, i);
    }
    const auto g_flat = rho * std::span<const Complex>(flat);
    ComplexMatrix g(d, 2);
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t k = 0; k < d; ++k) g(k, i) = g_flat[i * d + k];
    }
    // Tangent projection G - X herm(X^dag G).
    auto xg = x.adjoint() * g;
    auto sym = 0.5 * (xg + xg.adjoint());
    const ComplexMatrix dir = g - x * sym;
    if (frobenius_norm(dir) < 1e-15) {
      return {f, x, it, true};
    }

    double gain = 0.0;
    for (double step = 1.0; step > 1e-20; step *= 0.5) {
      ComplexMatrix trial = orthonormalize_columns(x + step * dir);
      const double ft = objective(rho, trial);
      if (ft > f) {
        gain = ft - f;
        f = ft;
        x = std::move(trial);
        break;
      }
    }
    // Linear convergence leaves about gain * r / (1 - r) on the table, where r
    // is the observed contraction of successive gains.
    const double r = prev_gain > 0.0 ? gain / prev_gain : 1.0;
    const double remaining = r < 1.0 ? gain * r / (1.0 - r) : gain;
    prev_gain = gain;
    small_gains = (gain < opt.tol && remaining < opt.tol) ? small_gains + 1 : 0;
    if (small_gains >= 3) return {f, x, it + 1, true};
  }
  return {f, x, it, false};
}

}  // namespace

double concurrence_pure(const PureState& phi, std::size_t split) {
  return std::min(1.0, 2.0 * std::sqrt(reduced_det(phi, split)));
}

double fef_pure(const PureState& phi, std::size_t split) {
  return std::min(1.0, 0.5 + std::sqrt(reduced_det(phi, split)));
}

double concurrence_two_qubit(const DensityOperator& rho) {
  require_two_qubit(rho);
  const auto& m = rho.matrix();
  const ComplexMatrix tilde = yy() * m.conj() * yy();
  const ComplexMatrix root = hermitian_apply(m, sqrt_psd);
  ComplexMatrix r = root * tilde * root;
  for (std::size_t i = 0; i < 4; ++i) {
    r(i, i) = r(i, i).real();
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Complex avg = 0.5 * (r(i, j) + std::conj(r(j, i)));
      r(i, j) = avg;
      r(j, i) = std::conj(avg);
    }
  }
  const auto eig = hermitian_eig(r);
  std::array<double, 4> l{};
  for (std::size_t i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(eig.eigenvalues[i], 0.0));
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double overlap(const DensityOperator& rho, const PureState& e) {
  return expectation(rho.matrix(), e.amplitudes()).real();
}

FefResult fef_two_qubit(const DensityOperator& rho) {
  require_two_qubit(rho);
  const auto& b = magic_basis();
  const ComplexMatrix gram = b.adjoint() * rho.matrix() * b;
  ComplexMatrix re(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) re(i, j) = gram(i, j).real();
  }
  const auto eig = hermitian_eig(re);
  std::vector<Complex> coeff = eig.eigenvectors.col(0);
  // Real symmetric input gives real eigenvectors up to a global phase.
  for (const auto& z : coeff) {
    if (std::abs(z) > 1e-8) {
      const Complex ph = std::conj(z) / std::abs(z);
      for (auto& w : coeff) w = (w * ph).real();
      break;
    }
  }
  auto e = b * std::span<const Complex>(coeff);
  return FefResult{std::clamp(eig.eigenvalues[0], 0.0, 1.0),
                   PureState::normalized(std::move(e), {2, 2}), 0, 0, true};
}

FefResult fef_2xd(const DensityOperator& rho, const FefOptions& options) {
  const auto& dims = rho.dims();
  if (dims.size() != 2 || dims[0] != 2 || dims[1] < 2 || dims[1] > 4) {
    throw ArgumentError("fef_2xd expects dims [2,d] with d in {2,3,4}");
  }
  if (options.restarts < 1) throw ArgumentError("restarts must be at least 1");
  if (!(options.tol > 0.0)) throw ArgumentError("tol must be positive");
  const std::size_t d = dims[1];

  std::optional<RestartOutcome> best;
  int total_iterations = 0;
  bool any_converged = false;
  for (int r = 0; r < options.restarts; ++r) {
    auto out = ascend(rho.matrix(), d, derive_seed(options.seed, static_cast<std::uint64_t>(r)),
                      options);
    total_iterations += out.iterations;
    any_converged = any_converged || out.converged;
    if (!best || out.value > best->value) best = std::move(out);
  }
  if (!any_converged) {
    throw NumericError("fef_2xd: no restart converged", best->value);
  }
  std::vector<Complex> e(2 * d);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < d; ++k) e[i * d + k] = best->x(k, i) * kInvSqrt2;
  }
  auto vec = PureState::normalized(std::move(e), {2, d});
  const double value = std::clamp(overlap(rho, vec), 0.0, 1.0);
  return FefResult{value, std::move(vec), options.restarts, total_iterations, true};
}

double fidelity_from_fef(double fef) {
  if (!(fef >= -1e-12 && fef <= 1.0 + 1e-12)) {
    throw ArgumentError("fully entangled fraction must lie in [0,1], got " + std::to_string(fef));
  }
  return (2.0 * fef + 1.0) / 3.0;
}

ClampedPairQuantities clamp_pair_quantities(double fef) {
  ClampedPairQuantities q;
  q.fef_raw = fef;
  q.fef_clamped = std::max(fef, 0.5);
  q.fid_raw = (2.0 * fef + 1.0) / 3.0;
  q.fid_clamped = std::max(q.fid_raw, 2.0 / 3.0);
  return q;
}

}  // namespace entmono
