#include "entmono/random.hpp"

#include <cmath>

namespace entmono {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Complex complex_gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (auto& z : g.entries()) z = complex_gaussian(rng);
  return g;
}

ComplexMatrix haar_isometry(std::size_t n, std::size_t k, Rng& rng) {
  // Gram-Schmidt with a positive R diagonal gives the Haar measure.
  return orthonormalize_columns(gaussian_matrix(n, k, rng));
}

ComplexMatrix haar_unitary(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return haar_isometry(n, n, rng);
}

}  // namespace entmono
