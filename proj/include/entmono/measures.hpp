#pragma once

#include <cstdint>

#include "entmono/states.hpp"

namespace entmono {

/// Fully entangled fraction together with the maximally entangled vector that
/// attains it.
struct FefResult {
  double value = 0.0;
  PureState optimal_vector;
  int restarts_used = 0;
  int iterations = 0;  // summed over restarts
  bool converged = false;
};

/// Pair quantities floored at the classical teleportation limits.
struct ClampedPairQuantities {
  double fef_raw = 0.0;
  double fef_clamped = 0.0;  // max(fef_raw, 1/2)
  double fid_raw = 0.0;      // (2 fef_raw + 1) / 3
  double fid_clamped = 0.0;  // max(fid_raw, 2/3)
};

struct FefOptions {
  int restarts = 32;
  double tol = 1e-10;
  std::uint64_t seed = 42;
  int max_iterations = 20000;  // per restart
};

/// 2 sqrt(det rho_1) across the split (leading `split` subsystems vs the
/// rest). The first factor must be a qubit.
double concurrence_pure(const PureState& phi, std::size_t split = 1);

/// Closed-form two-qubit concurrence max(0, l1 - l2 - l3 - l4), the l_i being
/// the square roots of the eigenvalues of sqrt(rho) rho~ sqrt(rho) with
/// rho~ = (Y (x) Y) rho* (Y (x) Y).
double concurrence_two_qubit(const DensityOperator& rho);

/// 1/2 + sqrt(det rho_1); equals (concurrence_pure + 1) / 2.
double fef_pure(const PureState& phi, std::size_t split = 1);

/// Two-qubit FEF as the top eigenvalue of Re<e_i|rho|e_j> in the magic basis
/// {phi+, i phi-, i psi+, psi-}.
FefResult fef_two_qubit(const DensityOperator& rho);

/// FEF of a [2,d] state (d in {2,3,4}) by maximizing <e|rho|e> over
/// |e> = (|0>v0 + |1>v1)/sqrt2 with (v0, v1) orthonormal.
///
/// Each restart starts from a Haar-random isometry derived from
/// `options.seed` and runs projected gradient ascent on the Stiefel manifold
/// with a QR retraction and backtracking (step 1, halved until the objective
/// increases). A restart converges once, for three consecutive iterations,
/// both the gain and the extrapolated remaining gain (from the contraction
/// rate of successive gains) stay below `options.tol`. The best restart wins, lowest index on
/// ties. Throws NumericError carrying the best value if no restart converges.
FefResult fef_2xd(const DensityOperator& rho, const FefOptions& options = {});

/// <e|rho|e>
double overlap(const DensityOperator& rho, const PureState& e);

/// Maximal teleportation fidelity (2F + 1) / 3.
double fidelity_from_fef(double fef);

ClampedPairQuantities clamp_pair_quantities(double fef);

}  // namespace entmono
