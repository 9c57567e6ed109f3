#ifndef HESSPAIR_IRREDUCIBLE_HPP
#define HESSPAIR_IRREDUCIBLE_HPP

// Deciding whether a pair of transformations has a common invariant
// subspace other than 0 and V.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hesspair/linalg.hpp"

namespace hesspair {

enum class Irreducibility { Irreducible, Reducible, Undetermined };
enum class IrreducibilityMethod { BruteForce, MeatAxe, AlgebraDimension, SpinProbe, Commutant };

std::string_view to_string(Irreducibility status);
std::string_view to_string(IrreducibilityMethod method);

struct IrreducibilityVerdict {
  Irreducibility status = Irreducibility::Undetermined;
  /// Present exactly when status is Reducible: a proper nonzero subspace
  /// invariant under both transformations.
  std::optional<Subspace> witness;
  IrreducibilityMethod method = IrreducibilityMethod::SpinProbe;
};

struct IrreducibilityOptions {
  std::uint64_t seed = 1;
  /// Largest number of projective points (p^n - 1)/(p - 1) spun by the
  /// exhaustive search over GF(p).
  std::uint64_t brute_force_budget = 1U << 16;
  /// Random algebra elements drawn by the Norton test before giving up.
  unsigned meataxe_draws = 64;
};

/// Smallest subspace containing v and closed under every generator.
Subspace spin(std::span<const FieldElement> v, std::span<const Matrix> generators);

struct AlgebraClosure {
  std::size_t dimension = 0;
  /// A basis of the unital algebra generated by the generators.
  std::vector<Matrix> basis;
};

AlgebraClosure algebra_closure(std::span<const Matrix> generators);

/// True iff A W ⊆ W and A* W ⊆ W.
bool verify_invariant(const Subspace& w, const Matrix& a, const Matrix& astar);

/// Spins one representative of every projective point of K^n. Returns
/// nullopt over Q or when there are more than `budget` points.
std::optional<IrreducibilityVerdict> decide_irreducible_exhaustive(const Matrix& a, const Matrix& astar,
                                                                  std::uint64_t budget);

/// Ladder: algebra dimension n^2 (Burnside); spin probes from standard and
/// eigen bases; a non-scalar commuting matrix with an eigenvalue in the
/// field; Norton's criterion on eigenspace corners that carry a full matrix
/// algebra; exhaustive spinning of projective points over small GF(p);
/// random Norton draws over larger GF(p). Otherwise Undetermined.
IrreducibilityVerdict decide_irreducible(const Matrix& a, const Matrix& astar,
                                         const IrreducibilityOptions& options = {});

}  // namespace hesspair

#endif  // HESSPAIR_IRREDUCIBLE_HPP
