#pragma once

#include <cstdint>
#include <random>

#include "entmono/linalg.hpp"

namespace entmono {

using Rng = std::mt19937_64;

/// Deterministic child seed for stream `index` of a caller seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Complex standard Gaussian: real and imaginary parts are N(0, 1/2).
Complex complex_gaussian(Rng& rng);

/// rows x cols matrix of independent complex standard Gaussians.
ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-random n x n unitary (QR of a Gaussian matrix).
ComplexMatrix haar_unitary(std::size_t n, std::uint64_t seed);

/// Haar-random n x k isometry (orthonormal columns).
ComplexMatrix haar_isometry(std::size_t n, std::size_t k, Rng& rng);

}  // namespace entmono
