#include "entmono/telesim.hpp"

#include <cmath>
#include <numbers>

#include "entmono/errors.hpp"
#include "entmono/measures.hpp"
#include "entmono/random.hpp"
#include "parallel.hpp"

namespace entmono {

namespace {

const ComplexMatrix kI2 = ComplexMatrix::identity(2);
const ComplexMatrix kX{{0, 1}, {1, 0}};
const ComplexMatrix kZ{{1, 0}, {0, -1}};

// Lambda(x) for the rotated resource, by explicit Bell measurement.
ComplexMatrix teleport(const ComplexMatrix& x, const ComplexMatrix& resource) {
  static const std::array<BellKind, 4> outcomes = {BellKind::PhiPlus, BellKind::PhiMinus,
                                                   BellKind::PsiPlus, BellKind::PsiMinus};
  // Bob's state after outcome k is P_k |xi>, P_k in {I, Z, X, XZ}; undo it.
  static const std::array<ComplexMatrix, 4> corrections = {kI2, kZ, kX, kZ * kX};
  const ComplexMatrix joint = kron(x, resource);
  ComplexMatrix out(2, 2);
  for (std::size_t k = 0; k < 4; ++k) {
    const auto proj = ComplexMatrix::outer(bell_state(outcomes[k]).amplitudes());
    const auto bob = partial_trace(kron(proj, kI2) * joint, {2, 2, 2}, {2});
    out += corrections[k] * bob * corrections[k].adjoint();
  }
  return out;
}

struct Moments {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    const double total = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
};

}  // namespace

bool TeleportEstimate::consistent() const {
  return std::abs(mc_mean - exact_value) <= 4.0 * mc_std_err + 1e-12;
}

TeleportChannel build_channel(const DensityOperator& rho) {
  if (rho.dims() != Dims{2, 2}) throw ArgumentError("teleportation needs a [2,2] channel state");
  const auto best = fef_two_qubit(rho);
  const auto e = best.optimal_vector.amplitudes();
  // |e> = (I (x) W)|phi+> with W = sqrt2 E^T, E_ik = <ik|e>.
  ComplexMatrix w(2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t k = 0; k < 2; ++k) w(k, i) = std::numbers::sqrt2 * e[i * 2 + k];
  }
  w = orthonormalize_columns(w);
  const ComplexMatrix frame_b = w.adjoint();
  const ComplexMatrix local = kron(kI2, frame_b);
  auto rotated = local * rho.matrix() * local.adjoint();

  ComplexMatrix choi(4, 4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      ComplexMatrix unit(2, 2);
      unit(i, j) = 1.0;
      ComplexMatrix term = kron(unit, teleport(unit, rotated));
      choi += 0.5 * term;
    }
  }
  // Clean rounding asymmetry before validating.
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Complex avg = 0.5 * (rotated(i, j) + std::conj(rotated(j, i)));
      rotated(i, j) = avg;
      rotated(j, i) = std::conj(avg);
    }
    rotated(i, i) = rotated(i, i).real();
  }
  return TeleportChannel{rho, DensityOperator::from_matrix(std::move(rotated), {2, 2}),
                         {kI2, frame_b}, std::move(choi)};
}

ComplexMatrix apply_channel(const TeleportChannel& ch, const ComplexMatrix& x) {
  if (x.rows() != 2 || x.cols() != 2) throw ArgumentError("channel input must be 2x2");
  ComplexMatrix out(2, 2);
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t n = 0; n < 2; ++n) {
      Complex s{};
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) s += x(i, j) * ch.choi_matrix(i * 2 + m, j * 2 + n);
      }
      out(m, n) = 2.0 * s;
    }
  }
  return out;
}

double entanglement_fidelity(const TeleportChannel& ch) {
  return expectation(ch.choi_matrix, bell_state(BellKind::PhiPlus).amplitudes()).real();
}

double exact_average_fidelity(const TeleportChannel& ch) {
  return (2.0 * entanglement_fidelity(ch) + 1.0) / 3.0;
}

TeleportEstimate mc_average_fidelity(const TeleportChannel& ch, std::size_t samples,
                                     std::uint64_t seed) {
  if (samples < 100) throw ArgumentError("at least 100 samples are required");
  const std::size_t chunks = (samples + kTeleportChunk - 1) / kTeleportChunk;
  std::vector<Moments> partial(chunks);
  detail::parallel_for(chunks, [&](std::size_t c) {
    Rng rng(derive_seed(seed, c));
    const std::size_t begin = c * kTeleportChunk;
    const std::size_t end = std::min(samples, begin + kTeleportChunk);
    Moments m;
    for (std::size_t s = begin; s < end; ++s) {
      const auto xi = haar_pure({2}, rng);
      const auto a = xi.amplitudes();
      // <xi|Lambda(|xi><xi|)|xi> = 2 w^dag J w with w = conj(xi) (x) xi.
      const std::array<Complex, 4> w = {std::conj(a[0]) * a[0], std::conj(a[0]) * a[1],
                                        std::conj(a[1]) * a[0], std::conj(a[1]) * a[1]};
      m.add(2.0 * expectation(ch.choi_matrix, w).real());
    }
    partial[c] = m;
  });
  Moments total;
  for (const auto& m : partial) total.merge(m);

  TeleportEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.mc_mean = total.mean;
  const double variance = total.n > 1 ? total.m2 / static_cast<double>(total.n - 1) : 0.0;
  est.mc_std_err = std::sqrt(std::max(variance, 0.0) / static_cast<double>(total.n));
  est.exact_value = exact_average_fidelity(ch);
  return est;
}

}  // namespace entmono
