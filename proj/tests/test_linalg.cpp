#include <doctest.h>

#include <cmath>

#include "entmono/errors.hpp"
#include "entmono/linalg.hpp"
#include "entmono/states.hpp"
#include "oracles.hpp"

using namespace entmono;
using entmono::testing::random_hermitian;
using entmono::testing::random_matrix;

TEST_CASE("kron examples") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) ==
        ComplexMatrix::identity(4));

  const ComplexMatrix x{{0, 1}, {1, 0}};
  CHECK(kron(x, ComplexMatrix{{1}}) == x);

  const double d12[] = {1, 2}, d34[] = {3, 4}, d3468[] = {3, 4, 6, 8};
  CHECK(kron(ComplexMatrix::diagonal(d12), ComplexMatrix::diagonal(d34)) ==
        ComplexMatrix::diagonal(d3468));
}

TEST_CASE("kron block structure and size limit") {
  const auto a = random_matrix(2, 3, 1);
  const auto b = random_matrix(4, 2, 2);
  const auto k = kron(a, b);
  REQUIRE(k.rows() == 8);
  REQUIRE(k.cols() == 6);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 2; ++c) CHECK(k(i * 4 + r, j * 2 + c) == a(i, j) * b(r, c));

  CHECK_THROWS_AS(kron(ComplexMatrix(64, 1), ComplexMatrix(32, 1)), SizeError);
}

TEST_CASE("matrices reject non-finite entries and bad shapes") {
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex(NAN, 0)}), ArgumentError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, {1, 2, 3}), ShapeError);
  CHECK_THROWS_AS(ComplexMatrix(2, 3) * ComplexMatrix(2, 3), ShapeError);
}

TEST_CASE("kron is associative") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = random_matrix(2, 2, 3 * s);
    const auto b = random_matrix(4, 4, 3 * s + 1);
    const auto c = random_matrix(2, 2, 3 * s + 2);
    CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) <= 1e-12);
  }
}

TEST_CASE("partial_trace examples") {
  const auto p00 = ComplexMatrix::outer(PureState::basis({2, 2}, 0).amplitudes());
  CHECK(max_abs_diff(partial_trace(p00, {2, 2}, {0}),
                     ComplexMatrix::outer(PureState::basis({2}, 0).amplitudes())) <= 1e-15);

  const auto phi = ComplexMatrix::outer(bell_state(BellKind::PhiPlus).amplitudes());
  CHECK(max_abs_diff(partial_trace(phi, {2, 2}, {0}), 0.5 * ComplexMatrix::identity(2)) <=
        1e-15);

  // Tracing the middle qubit of sigma_gamma gives the Bell-diagonal form.
  for (double g : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const SigmaGammaParams p(g);
    const auto reduced = partial_trace(sigma_gamma_state(p).matrix(), {2, 2, 2}, {0, 2});
    CHECK(max_abs_diff(reduced, sigma_gamma_pair(p, PartyPair::P13).matrix()) <= 1e-12);
  }
}

TEST_CASE("partial_trace of a product is a times tr b") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = random_matrix(2, 2, 100 + s);
    const auto b = random_matrix(4, 4, 200 + s);
    CHECK(max_abs_diff(partial_trace(kron(a, b), {2, 4}, {0}), b.trace() * a) <= 1e-12);
    CHECK(max_abs_diff(partial_trace(kron(a, b), {2, 4}, {1}), a.trace() * b) <= 1e-12);
  }
}

TEST_CASE("partial_trace preserves trace and validates arguments") {
  const auto m = random_matrix(8, 8, 7);
  const auto r = partial_trace(m, {2, 2, 2}, {2, 0});
  CHECK(std::abs(r.trace() - m.trace()) <= 1e-12);
  CHECK_THROWS_AS(partial_trace(m, {2, 2}, {0}), ShapeError);
  CHECK_THROWS_AS(partial_trace(m, {2, 2, 2}, {}), ArgumentError);
  CHECK_THROWS_AS(partial_trace(m, {2, 2, 2}, {0, 1, 2}), ArgumentError);
  CHECK_THROWS_AS(partial_trace(m, {2, 2, 2}, {5}), ArgumentError);
}

TEST_CASE("hermitian_eig examples") {
  auto e = hermitian_eig(ComplexMatrix::identity(4));
  for (double v : e.eigenvalues) CHECK(v == doctest::Approx(1.0));

  const double d[] = {3, 1, 2};
  e = hermitian_eig(ComplexMatrix::diagonal(d));
  CHECK(e.eigenvalues == std::vector<double>{3, 2, 1});

  e = hermitian_eig(ComplexMatrix{{0, 1}, {1, 0}});
  CHECK(e.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(e.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input and symmetrizes tiny defects") {
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix{{0, 1}, {0, 0}}), ArgumentError);
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix(2, 3)), ShapeError);
  ComplexMatrix h{{1, Complex(0, 1)}, {Complex(0, -1), 1}};
  h(0, 1) += 1e-12;
  const auto e = hermitian_eig(h);
  CHECK(e.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(std::abs(e.eigenvalues[1]) < 1e-11);
}

TEST_CASE("hermitian_eig invariants on random Hermitian matrices") {
  for (std::size_t n : {2u, 3u, 4u, 8u, 16u, 32u}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto h = random_hermitian(n, 1000 * n + s);
      const auto e = hermitian_eig(h);
      double sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        sum += e.eigenvalues[k];
        if (k > 0) CHECK(e.eigenvalues[k - 1] >= e.eigenvalues[k]);
      }
      CHECK(std::abs(sum - h.trace().real()) <= 1e-10);

      const auto& q = e.eigenvectors;
      CHECK(max_abs_diff(q.adjoint() * q, ComplexMatrix::identity(n)) <= 1e-10);
      CHECK(max_abs_diff(q * ComplexMatrix::diagonal(e.eigenvalues) * q.adjoint(), h) <= 1e-10);
    }
  }
}

TEST_CASE("hermitian_eig is deterministic") {
  const auto h = random_hermitian(8, 99);
  const auto a = hermitian_eig(h);
  const auto b = hermitian_eig(h);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("orthonormalize_columns produces an isometry spanning the same columns") {
  const auto m = random_matrix(4, 2, 5);
  const auto q = orthonormalize_columns(m);
  CHECK(max_abs_diff(q.adjoint() * q, ComplexMatrix::identity(2)) <= 1e-14);
  // First column is parallel to the input's first column with positive overlap.
  const auto c0 = m.col(0);
  const Complex ov = inner(q.col(0), c0);
  CHECK(std::abs(ov.imag()) < 1e-14);
  CHECK(ov.real() == doctest::Approx(norm(c0)));

  ComplexMatrix dep(3, 2);
  dep(0, 0) = 1.0;
  dep(0, 1) = 2.0;
  CHECK_THROWS_AS(orthonormalize_columns(dep), NumericError);
}
