#include "entmono/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "entmono/errors.hpp"
#include "entmono/random.hpp"

namespace entmono {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void check_dims(const Dims& dims, std::size_t length) {
  if (dims.empty() || std::find(dims.begin(), dims.end(), 0u) != dims.end()) {
    throw ShapeError("subsystem dimensions must be positive");
  }
  if (product(dims) != length) {
    throw ShapeError("dims product " + std::to_string(product(dims)) +
                     " does not match dimension " + std::to_string(length));
  }
}

// Rotate v so that its first non-negligible component is real and positive.
void fix_phase(std::vector<Complex>& v) {
  for (const auto& z : v) {
    if (std::abs(z) > 1e-12) {
      const Complex ph = std::conj(z) / std::abs(z);
      for (auto& w : v) w *= ph;
      return;
    }
  }
}

std::vector<Complex> bell_amplitudes(BellKind kind) {
  const double s = kInvSqrt2;
  switch (kind) {
    case BellKind::PhiPlus: return {s, 0, 0, s};
    case BellKind::PhiMinus: return {s, 0, 0, -s};
    case BellKind::PsiPlus: return {0, s, s, 0};
    case BellKind::PsiMinus: return {0, s, -s, 0};
  }
  throw ArgumentError("unknown Bell state");
}

constexpr std::array<BellKind, 4> kAllBell = {BellKind::PhiPlus, BellKind::PhiMinus,
                                              BellKind::PsiPlus, BellKind::PsiMinus};

}  // namespace

std::string_view to_string(BellKind kind) {
  switch (kind) {
    case BellKind::PhiPlus: return "phi+";
    case BellKind::PhiMinus: return "phi-";
    case BellKind::PsiPlus: return "psi+";
    case BellKind::PsiMinus: return "psi-";
  }
  return "?";
}

BellKind parse_bell_kind(std::string_view name) {
  for (auto k : kAllBell) {
    if (to_string(k) == name) return k;
  }
  throw ArgumentError("unknown Bell state '" + std::string(name) + "'");
}

// --- PureState -------------------------------------------------------------

PureState::PureState(std::vector<Complex> amplitudes, Dims dims) : dims_(std::move(dims)) {
  check_dims(dims_, amplitudes.size());
  const double n = norm(amplitudes);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance) {
    throw ArgumentError("state is not normalized (norm " + std::to_string(n) + ")");
  }
  amps_ = std::make_shared<const std::vector<Complex>>(std::move(amplitudes));
}

PureState::PureState(std::shared_ptr<const std::vector<Complex>> amps, Dims dims)
    : amps_(std::move(amps)), dims_(std::move(dims)) {}

PureState PureState::normalized(std::vector<Complex> amplitudes, Dims dims) {
  const double n = norm(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) throw ArgumentError("cannot normalize a zero vector");
  for (auto& z : amplitudes) z /= n;
  return PureState(std::move(amplitudes), std::move(dims));
}

PureState PureState::basis(Dims dims, std::size_t index) {
  const std::size_t n = product(dims);
  if (index >= n) throw ArgumentError("basis index out of range");
  std::vector<Complex> v(n);
  v[index] = 1.0;
  return PureState(std::move(v), std::move(dims));
}

PureState PureState::with_dims(Dims dims) const {
  check_dims(dims, amps_->size());
  return PureState(amps_, std::move(dims));
}

// --- DensityOperator -------------------------------------------------------

DensityOperator::DensityOperator(std::shared_ptr<const ComplexMatrix> m, Dims dims)
    : matrix_(std::move(m)), dims_(std::move(dims)) {}

DensityOperator DensityOperator::from_matrix(ComplexMatrix m, Dims dims) {
  if (!m.is_square()) throw ArgumentError("invariant 'dims' violated: matrix is not square");
  try {
    check_dims(dims, m.rows());
  } catch (const ShapeError& e) {
    throw ArgumentError(std::string("invariant 'dims' violated: ") + e.what());
  }
  const double defect = hermiticity_defect(m);
  if (defect > kDensityTolerance) {
    throw ArgumentError("invariant 'hermitian' violated (defect " + std::to_string(defect) +
                        ")");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > kDensityTolerance) {
    throw ArgumentError("invariant 'trace' violated (trace " + std::to_string(tr.real()) +
                        ")");
  }
  const auto eig = hermitian_eig(m);
  if (eig.eigenvalues.back() < -kDensityTolerance) {
    throw ArgumentError("invariant 'positive semidefinite' violated (min eigenvalue " +
                        std::to_string(eig.eigenvalues.back()) + ")");
  }
  return DensityOperator(std::make_shared<const ComplexMatrix>(std::move(m)), std::move(dims));
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
  return DensityOperator(
      std::make_shared<const ComplexMatrix>(ComplexMatrix::outer(psi.amplitudes())),
      psi.dims());
}

DensityOperator DensityOperator::with_dims(Dims dims) const {
  check_dims(dims, matrix_->rows());
  return DensityOperator(matrix_, std::move(dims));
}

DensityOperator DensityOperator::reduced(std::vector<std::size_t> keep) const {
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  auto m = partial_trace(*matrix_, dims_, keep);
  Dims kd;
  for (auto k : keep) kd.push_back(dims_[k]);
  return DensityOperator(std::make_shared<const ComplexMatrix>(std::move(m)), std::move(kd));
}

// --- parameters ------------------------------------------------------------

TwoParamClassParams::TwoParamClassParams(double alpha, double gamma, std::size_t d)
    : alpha_(alpha), gamma_(gamma), d_(d) {
  if (d < 2) throw ArgumentError("d must be at least 2");
  auto in_unit = [](double x) {
    return x >= -kParamTolerance && x <= 1.0 + kParamTolerance;
  };
  if (!in_unit(alpha) || !in_unit(gamma)) {
    throw ArgumentError("alpha and gamma must lie in [0,1]");
  }
  beta_ = (1.0 - 2.0 * static_cast<double>(d - 2) * alpha - gamma) / 3.0;
  if (!in_unit(beta_)) {
    throw ArgumentError("2(d-2) alpha + 3 beta + gamma = 1 has no beta in [0,1] (beta = " +
                        std::to_string(beta_) + ")");
  }
  alpha_ = std::clamp(alpha_, 0.0, 1.0);
  gamma_ = std::clamp(gamma_, 0.0, 1.0);
  beta_ = std::clamp(beta_, 0.0, 1.0);
}

SigmaGammaParams::SigmaGammaParams(double gamma) : gamma_(gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ArgumentError("gamma must lie in [0,1]");
}

// --- constructors ----------------------------------------------------------

PureState bell_state(BellKind kind) { return PureState(bell_amplitudes(kind), {2, 2}); }

PureState tilde_bell_state(BellKind kind) {
  return embedded_bell_state(kind, 4).with_dims({2, 2, 2});
}

PureState embedded_bell_state(BellKind kind, std::size_t d) {
  if (d < 2) throw ArgumentError("d must be at least 2");
  const auto b = bell_amplitudes(kind);
  std::vector<Complex> v(2 * d);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) v[i * d + j] = b[i * 2 + j];
  }
  return PureState(std::move(v), {2, d});
}

DensityOperator two_param_state(const TwoParamClassParams& p) {
  const std::size_t d = p.d();
  ComplexMatrix m(2 * d, 2 * d);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 2; j < d; ++j) m(i * d + j, i * d + j) += p.alpha();
  }
  for (auto k : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus}) {
    m += p.beta() * ComplexMatrix::outer(embedded_bell_state(k, d).amplitudes());
  }
  m += p.gamma() * ComplexMatrix::outer(embedded_bell_state(BellKind::PsiMinus, d).amplitudes());
  return DensityOperator::from_matrix(std::move(m), {2, d});
}

DensityOperator sigma_gamma_state(const SigmaGammaParams& g) {
  const double alpha = g.alpha();
  ComplexMatrix m(8, 8);
  // alpha |i1j><i1j| for i, j in {0, 1}
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const std::size_t idx = i * 4 + 2 + j;
      m(idx, idx) += alpha;
    }
  }
  for (auto k : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus}) {
    m += alpha * ComplexMatrix::outer(tilde_bell_state(k).amplitudes());
  }
  m += g.gamma() * ComplexMatrix::outer(tilde_bell_state(BellKind::PsiMinus).amplitudes());
  return DensityOperator::from_matrix(std::move(m), {2, 2, 2});
}

DensityOperator sigma_gamma_pair(const SigmaGammaParams& g, PartyPair pair) {
  if (pair == PartyPair::P12) return sigma_gamma_state(g).reduced({0, 1});
  const double alpha = g.alpha();
  ComplexMatrix m(4, 4);
  for (auto k : {BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus}) {
    m += 2.0 * alpha * ComplexMatrix::outer(bell_state(k).amplitudes());
  }
  m += (alpha + g.gamma()) * ComplexMatrix::outer(bell_state(BellKind::PsiMinus).amplitudes());
  return DensityOperator::from_matrix(std::move(m), {2, 2});
}

std::vector<Complex> SchmidtDecomposition::reconstruct() const {
  std::vector<Complex> out(left[0].size() * right[0].size());
  for (std::size_t t = 0; t < 2; ++t) {
    const auto term = kron(left[t], right[t]);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += coefficients[t] * term[i];
  }
  return out;
}

SchmidtDecomposition schmidt(const PureState& phi, std::size_t split) {
  const auto& dims = phi.dims();
  if (split == 0 || split >= dims.size()) {
    throw ShapeError("split must leave both factors nonempty");
  }
  const std::size_t first =
      product(Dims(dims.begin(), dims.begin() + static_cast<std::ptrdiff_t>(split)));
  if (first != 2) throw ShapeError("first factor of the split must be 2-dimensional");
  const std::size_t d = phi.dimension() / 2;
  const auto amps = phi.amplitudes();

  // rho_1 = M M^dagger for the 2 x d amplitude matrix M.
  ComplexMatrix rho1(2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Complex s{};
      for (std::size_t k = 0; k < d; ++k) s += amps[i * d + k] * std::conj(amps[j * d + k]);
      rho1(i, j) = s;
    }
  }
  const auto eig = hermitian_eig(rho1);

  SchmidtDecomposition out;
  for (std::size_t t = 0; t < 2; ++t) {
    const double lambda = std::max(eig.eigenvalues[t], 0.0);
    out.coefficients[t] = std::sqrt(lambda);
    out.left[t] = eig.eigenvectors.col(t);
    fix_phase(out.left[t]);
    out.right[t].assign(d, Complex{});
    if (lambda > 1e-24) {
      for (std::size_t k = 0; k < d; ++k) {
        Complex s{};
        for (std::size_t i = 0; i < 2; ++i) s += std::conj(out.left[t][i]) * amps[i * d + k];
        out.right[t][k] = s;
      }
      const double n = norm(out.right[t]);
      for (auto& z : out.right[t]) z /= n;
    }
  }
  if (norm(out.right[1]) == 0.0) {
    // Product state: complete b0 with the first basis vector it is not parallel to.
    for (std::size_t k = 0; k < d; ++k) {
      std::vector<Complex> e(d);
      e[k] = 1.0;
      const Complex proj = inner(out.right[0], e);
      for (std::size_t r = 0; r < d; ++r) e[r] -= proj * out.right[0][r];
      const double n = norm(e);
      if (n > 1e-6) {
        for (auto& z : e) z /= n;
        out.right[1] = std::move(e);
        break;
      }
    }
  }
  return out;
}

ComplexMatrix embed_qubit_op(const ComplexMatrix& a) {
  if (a.rows() != 2 || a.cols() != 2) throw ArgumentError("embed_qubit_op expects a 2x2 matrix");
  ComplexMatrix out = ComplexMatrix::identity(4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) out(i, j) = a(i, j);
  }
  return out;
}

PureState haar_pure(const Dims& dims, std::uint64_t seed) {
  Rng rng(seed);
  return haar_pure(dims, rng);
}

PureState haar_pure(const Dims& dims, Rng& rng) {
  const std::size_t n = product(dims);
  if (n > kMaxStateDimension) throw SizeError("total dimension exceeds 32");
  std::vector<Complex> v(n);
  for (auto& z : v) z = complex_gaussian(rng);
  return PureState::normalized(std::move(v), dims);
}

DensityOperator random_density(const Dims& dims, std::uint64_t seed) {
  const std::size_t n = product(dims);
  if (n > kMaxStateDimension) throw SizeError("total dimension exceeds 32");
  Rng rng(seed);
  const auto g = gaussian_matrix(n, n, rng);
  auto m = g * g.adjoint();
  const double tr = m.trace().real();
  m *= 1.0 / tr;
  // Exact Hermiticity; the product only guarantees it to rounding.
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) m(j, i) = std::conj(m(i, j));
  }
  return DensityOperator::from_matrix(std::move(m), dims);
}

PureState move_subsystem_to_front(const PureState& psi, std::size_t index) {
  const auto& dims = psi.dims();
  if (index >= dims.size()) throw ArgumentError("subsystem index out of range");
  if (index == 0) return psi;
  const std::size_t n = dims.size();
  Dims order{index};
  for (std::size_t s = 0; s < n; ++s) {
    if (s != index) order.push_back(s);
  }
  Dims new_dims;
  for (auto s : order) new_dims.push_back(dims[s]);

  std::vector<std::size_t> old_stride(n, 1);
  for (std::size_t s = n - 1; s > 0; --s) old_stride[s - 1] = old_stride[s] * dims[s];

  const auto amps = psi.amplitudes();
  std::vector<Complex> out(amps.size());
  std::vector<std::size_t> digit(n, 0);  // multi-index in the new order
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::size_t old_flat = 0;
    for (std::size_t t = 0; t < n; ++t) old_flat += digit[t] * old_stride[order[t]];
    out[flat] = amps[old_flat];
    for (std::size_t t = n; t-- > 0;) {
      if (++digit[t] < new_dims[t]) break;
      digit[t] = 0;
    }
  }
  return PureState(std::move(out), std::move(new_dims));
}

}  // namespace entmono
