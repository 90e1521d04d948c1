#pragma once

#include <array>
#include <cstdint>

#include "entmono/states.hpp"

namespace entmono {

/// Standard teleportation over a two-qubit resource: Bell measurement on
/// (input, Alice), Pauli correction on Bob, after a local frame rotation that
/// maps the resource's FEF-optimal maximally entangled vector onto |phi+>.
struct TeleportChannel {
  DensityOperator channel_state;              // as supplied
  DensityOperator rotated_state;              // (A (x) B) rho (A (x) B)^dag
  std::array<ComplexMatrix, 2> correction_frame;  // {A, B}
  /// Normalized Choi matrix (id (x) Lambda)(|phi+><phi+|), input factor first.
  ComplexMatrix choi_matrix;
};

struct TeleportEstimate {
  double mc_mean = 0.0;
  double mc_std_err = 0.0;
  double exact_value = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  /// |mc_mean - exact_value| <= 4 mc_std_err
  bool consistent() const;
};

TeleportChannel build_channel(const DensityOperator& rho);

/// Lambda(x) for a 2x2 operator x, read off the Choi matrix.
ComplexMatrix apply_channel(const TeleportChannel& ch, const ComplexMatrix& x);

/// Entanglement fidelity <phi+|choi|phi+>.
double entanglement_fidelity(const TeleportChannel& ch);

/// (2 F_e + 1) / 3, computed from the channel alone.
double exact_average_fidelity(const TeleportChannel& ch);

/// Samples per independently seeded chunk; the estimate does not depend on
/// how chunks are spread over threads.
inline constexpr std::size_t kTeleportChunk = 4096;

/// Monte-Carlo average of <xi|Lambda(|xi><xi|)|xi> over Haar-random qubit
/// inputs. Requires samples >= 100.
TeleportEstimate mc_average_fidelity(const TeleportChannel& ch, std::size_t samples,
                                     std::uint64_t seed);

}  // namespace entmono
