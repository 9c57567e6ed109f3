#ifndef HESSPAIR_GENERATE_HPP
#define HESSPAIR_GENERATE_HPP

// Seeded construction of pairs with known structure.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hesspair/hessenberg.hpp"

namespace hesspair {

enum class InstanceKind { SplitForm, TridiagonalForm, ReducibleSum, Conjugated };
std::string_view to_string(InstanceKind kind);

/// How off-diagonal blocks are filled.
enum class OffDiagonal { Nonzero, Ones, Sparse };

struct InstanceTruth {
  InstanceKind kind = InstanceKind::SplitForm;
  /// The generating split decomposition with its eigenvalue sequences.
  SplitDecomposition split;
  std::vector<std::size_t> dims;
  /// P with A = P A_0 P^{-1}, when the instance was conjugated.
  std::optional<Matrix> conjugator;
  /// A common invariant subspace, for reducible sums.
  std::optional<Subspace> invariant_subspace;
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  Matrix a;
  Matrix astar;
  InstanceTruth truth;
};

struct SplitFormParams {
  std::vector<std::size_t> dims;
  std::vector<FieldElement> theta;
  std::vector<FieldElement> theta_star;
  OffDiagonal off_diagonal = OffDiagonal::Nonzero;
};

/// With U_i the coordinate block of size dims[i]: A is block lower
/// bidiagonal with diagonal blocks θ_{d-i} I, A* block upper bidiagonal with
/// diagonal blocks θ*_i I. Throws EmptyDims, DuplicateEigenvalue, or
/// LengthMismatch.
GeneratedInstance gen_split_form(FieldSpec spec, const SplitFormParams& params, std::uint64_t seed);

struct TridiagonalGenOptions {
  unsigned max_attempts = 4096;
};

/// Samples split-form candidates until one is certified tridiagonal with
/// respect to its generating orderings. With all blocks one-dimensional,
/// every other candidate is bidiagonal with superdiagonal determined by one
/// random parameter; these succeed whenever the eigenvalue sequences admit a
/// tridiagonal pair at all. Throws GenerationBudgetExceeded.
GeneratedInstance gen_tridiagonal_form(FieldSpec spec, const SplitFormParams& params, std::uint64_t seed,
                                       const TridiagonalGenOptions& options = {});

/// Block diagonal sum of split-form pairs sharing θ and θ*. The generating
/// split is the blockwise sum; the first block is recorded as invariant.
GeneratedInstance gen_reducible(FieldSpec spec, std::span<const SplitFormParams> blocks, std::uint64_t seed);

/// A -> P A P^{-1}, A* -> P A* P^{-1}, U_i -> P U_i. Throws SingularConjugator.
GeneratedInstance conjugate_by(const GeneratedInstance& instance, const Matrix& p);
/// Conjugation by a random invertible matrix; singular draws are resampled.
GeneratedInstance conjugate(const GeneratedInstance& instance, std::uint64_t seed);

}  // namespace hesspair

#endif  // HESSPAIR_GENERATE_HPP
