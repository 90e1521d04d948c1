#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "entmono/linalg.hpp"

namespace entmono {

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kDensityTolerance = 1e-10;
inline constexpr double kParamTolerance = 1e-12;
/// Largest total Hilbert-space dimension the state constructors accept.
inline constexpr std::size_t kMaxStateDimension = 32;

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

std::string_view to_string(BellKind kind);
BellKind parse_bell_kind(std::string_view name);

/// Normalized state vector tagged with subsystem dimensions.
///
/// Amplitudes are shared and immutable, so `with_dims` re-tags a state
/// ([2,2,2] <-> [2,4], say) without copying.
class PureState {
 public:
  /// Throws ArgumentError unless the norm is 1 within kNormTolerance and
  /// ShapeError unless the length equals the product of dims.
  PureState(std::vector<Complex> amplitudes, Dims dims);

  /// Rescales to unit norm first.
  static PureState normalized(std::vector<Complex> amplitudes, Dims dims);
  /// Computational basis vector |index>.
  static PureState basis(Dims dims, std::size_t index);

  std::span<const Complex> amplitudes() const noexcept { return *amps_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dimension() const noexcept { return amps_->size(); }

  PureState with_dims(Dims dims) const;
  bool shares_storage_with(const PureState& other) const noexcept {
    return amps_ == other.amps_;
  }

 private:
  PureState(std::shared_ptr<const std::vector<Complex>> amps, Dims dims);

  std::shared_ptr<const std::vector<Complex>> amps_;
  Dims dims_;
};

/// Hermitian, positive semidefinite, unit-trace matrix with subsystem dims.
class DensityOperator {
 public:
  /// Validates every invariant; the ArgumentError message names the one
  /// that failed ("hermitian", "trace", "positive semidefinite", "dims").
  static DensityOperator from_matrix(ComplexMatrix m, Dims dims);
  static DensityOperator from_pure(const PureState& psi);

  const ComplexMatrix& matrix() const noexcept { return *matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  std::size_t dimension() const noexcept { return matrix_->rows(); }

  DensityOperator with_dims(Dims dims) const;
  bool shares_storage_with(const DensityOperator& other) const noexcept {
    return matrix_ == other.matrix_;
  }

  /// Partial trace onto the 0-based subsystems in `keep`.
  DensityOperator reduced(std::vector<std::size_t> keep) const;

 private:
  DensityOperator(std::shared_ptr<const ComplexMatrix> m, Dims dims);

  std::shared_ptr<const ComplexMatrix> matrix_;
  Dims dims_;
};

/// Parameters of the two-parameter 2 x d class. beta is fixed by
/// 2(d-2) alpha + 3 beta + gamma = 1.
class TwoParamClassParams {
 public:
  TwoParamClassParams(double alpha, double gamma, std::size_t d);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  std::size_t d() const noexcept { return d_; }

 private:
  double alpha_, beta_, gamma_;
  std::size_t d_;
};

/// The one-parameter three-qubit family: alpha = (1 - gamma) / 7.
class SigmaGammaParams {
 public:
  explicit SigmaGammaParams(double gamma);

  double gamma() const noexcept { return gamma_; }
  double alpha() const noexcept { return (1.0 - gamma_) / 7.0; }

 private:
  double gamma_;
};

enum class PartyPair { P13, P12 };

/// Schmidt form sqrt(a)|a0 b0> + sqrt(b)|a1 b1> of a 2 x d pure state.
struct SchmidtDecomposition {
  std::array<double, 2> coefficients{};  // descending
  std::array<std::vector<Complex>, 2> left;
  std::array<std::vector<Complex>, 2> right;

  std::vector<Complex> reconstruct() const;
};

PureState bell_state(BellKind kind);

/// Three-qubit embeddings of the Bell states: (|000> +- |101>)/sqrt2 and
/// (|001> +- |100>)/sqrt2. Tagged [2,2,2]; use `with_dims({2,4})` for the
/// 2 x 4 view.
PureState tilde_bell_state(BellKind kind);

/// The Bell states on span{|0>,|1>} of the second factor of 2 x d. For d = 4
/// these coincide with tilde_bell_state viewed as [2,4].
PureState embedded_bell_state(BellKind kind, std::size_t d);

DensityOperator two_param_state(const TwoParamClassParams& p);

/// The three-qubit counterexample family, tagged [2,2,2].
DensityOperator sigma_gamma_state(const SigmaGammaParams& g);

/// Two-qubit reductions of sigma_gamma_state. (1,3) is built from its
/// Bell-diagonal closed form; (1,2) by partial trace over the third qubit.
DensityOperator sigma_gamma_pair(const SigmaGammaParams& g, PartyPair pair);

/// `split` = number of leading subsystems forming the first factor, whose
/// dimension must be 2. Throws ShapeError otherwise.
SchmidtDecomposition schmidt(const PureState& phi, std::size_t split = 1);

/// Block-diagonal [[a, 0], [0, I2]] for a 2x2 matrix a.
ComplexMatrix embed_qubit_op(const ComplexMatrix& a);

/// Normalized vector of independent complex Gaussians.
PureState haar_pure(const Dims& dims, std::uint64_t seed);
PureState haar_pure(const Dims& dims, std::mt19937_64& rng);
DensityOperator random_density(const Dims& dims, std::uint64_t seed);

/// Reorders subsystems so that subsystem `index` comes first, the others
/// keeping their relative order.
PureState move_subsystem_to_front(const PureState& psi, std::size_t index);

}  // namespace entmono
