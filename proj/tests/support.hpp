#ifndef HESSPAIR_TESTS_SUPPORT_HPP
#define HESSPAIR_TESTS_SUPPORT_HPP

// Random generators shared by the test suites.

#include <cstdint>
#include <random>
#include <vector>

#include "hesspair/linalg.hpp"

namespace hesspair::testing {

inline FieldElement random_element(FieldSpec spec, std::mt19937_64& rng, long rational_range = 6) {
  if (spec.is_prime_field()) return FieldElement(spec, static_cast<long>(rng() % spec.p()));
  long num = static_cast<long>(rng() % (2 * rational_range + 1)) - rational_range;
  long den = static_cast<long>(rng() % 3) + 1;
  return FieldElement(spec, mpq_class(num, den));
}

inline FieldElement random_nonzero(FieldSpec spec, std::mt19937_64& rng) {
  for (;;) {
    FieldElement x = random_element(spec, rng);
    if (!x.is_zero()) return x;
  }
}

inline Vector random_vector(FieldSpec spec, std::size_t n, std::mt19937_64& rng) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(random_element(spec, rng));
  return v;
}

inline Matrix random_matrix(FieldSpec spec, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix m(spec, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_element(spec, rng);
  }
  return m;
}

inline Matrix random_invertible(FieldSpec spec, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Matrix m = random_matrix(spec, n, n, rng);
    if (rank(m) == n) return m;
  }
}

/// A random subspace of K^n spanned by up to `max_gens` random vectors.
inline Subspace random_subspace(FieldSpec spec, std::size_t n, std::mt19937_64& rng) {
  std::size_t gens = rng() % (n + 1);
  std::vector<Vector> vs;
  for (std::size_t i = 0; i < gens; ++i) vs.push_back(random_vector(spec, n, rng));
  return Subspace::span(spec, n, vs);
}

/// Same subspace, basis mixed by a random invertible matrix.
inline std::vector<Vector> rebased(const Subspace& s, std::mt19937_64& rng) {
  const std::size_t k = s.dim();
  if (k == 0) return {};
  Matrix mix = random_invertible(s.spec(), k, rng);
  Matrix mixed = mix * s.basis();
  return mixed.row_vectors();
}

inline FieldSpec random_small_field(std::mt19937_64& rng) {
  static const std::uint64_t primes[] = {2, 3, 5, 7, 11};
  return FieldSpec::prime(primes[rng() % 5]);
}

}  // namespace hesspair::testing

#endif  // HESSPAIR_TESTS_SUPPORT_HPP
