#ifndef HESSPAIR_HESSENBERG_HPP
#define HESSPAIR_HESSENBERG_HPP

// Hessenberg and tridiagonal pairs, the V_ij lattice, and split
// decompositions.
//
// Notation follows the usual conventions for a pair (A, A*): {V_i} is an
// ordering of the eigenspaces of A with eigenvalues {θ_i}, {V*_i} an
// ordering of the eigenspaces of A*. The pair is Hessenberg with respect to
// the orderings when
//
//   A* V_i ⊆ V_0 + ... + V_{i+1}    and    A V*_i ⊆ V*_0 + ... + V*_{i+1}.
//
// In a basis adapted to the orderings this makes the block matrix of A*
// (resp. A) upper Hessenberg.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hesspair/irreducible.hpp"
#include "hesspair/spectral.hpp"

namespace hesspair {

/// position -> index into EigenStructure::eigenvalues.
using Ordering = std::vector<std::size_t>;

Ordering identity_ordering(std::size_t size);
Ordering reversed(Ordering order);

/// An eigen structure together with an ordering of its eigenspaces, plus the
/// flag V_0 ⊆ V_0 + V_1 ⊆ ... derived from it.
class OrderedEigenData {
 public:
  /// Throws NotDiagonalizable, or InvalidArgument if `order` is not a permutation.
  OrderedEigenData(EigenStructure eigen, Ordering order);

  /// The ordering whose eigenvalue sequence is `thetas`; InvalidArgument if
  /// `thetas` is not a rearrangement of the eigenvalues.
  static OrderedEigenData from_eigenvalues(EigenStructure eigen, std::span<const FieldElement> thetas);

  const EigenStructure& eigen() const noexcept { return eigen_; }
  const Matrix& transform() const noexcept { return eigen_.transform; }
  const Ordering& order() const noexcept { return order_; }
  std::size_t d() const noexcept { return order_.size() - 1; }
  std::size_t n() const noexcept { return eigen_.n(); }

  const FieldElement& theta(std::size_t i) const { return eigen_.eigenvalues[order_.at(i)]; }
  const Subspace& space(std::size_t i) const { return eigen_.eigenspaces[order_.at(i)]; }
  std::vector<FieldElement> thetas() const;

  /// V_0 + ... + V_i; the zero subspace for i < 0 and V for i > d.
  const Subspace& flag(long i) const;
  /// V_i + ... + V_d; V for i < 0 and zero for i > d.
  Subspace coflag(long i) const;

  OrderedEigenData reversed() const;

 private:
  EigenStructure eigen_;
  Ordering order_;
  std::vector<Subspace> flag_;  // flag_[k] = V_0 + ... + V_{k-1}, k = 0..d+1
};

/// `other` V_i ⊆ V_0 + ... + V_{i+1} for every i.
bool satisfies_hessenberg_side(const Matrix& other, const OrderedEigenData& ord);
/// `other` V_i ⊆ V_{i-1} + V_i + V_{i+1} for every i.
bool satisfies_tridiagonal_side(const Matrix& other, const OrderedEigenData& ord);

/// Throws NotDiagonalizable if either eigen structure is not diagonalizable.
bool is_hessenberg_wrt(const Matrix& a, const Matrix& astar, const OrderedEigenData& ord_a,
                       const OrderedEigenData& ord_astar);

struct OrderingPair {
  Ordering a;
  Ordering astar;

  friend bool operator==(const OrderingPair&, const OrderingPair&) = default;
  friend auto operator<=>(const OrderingPair&, const OrderingPair&) = default;
};

struct SearchOptions {
  /// Largest (d+1)! accepted per side; larger searches throw SearchBudgetExceeded.
  std::uint64_t max_orderings = 40320;
};

/// Orderings of the eigenspaces of `eigen` satisfying the Hessenberg
/// condition for `other`, found by depth-first search that abandons a prefix
/// as soon as it violates the condition. Sorted ascending.
std::vector<Ordering> hessenberg_orderings_side(const Matrix& other, const EigenStructure& eigen,
                                                const SearchOptions& options = {});
/// Same result by testing every permutation.
std::vector<Ordering> hessenberg_orderings_side_brute_force(const Matrix& other, const EigenStructure& eigen,
                                                            const SearchOptions& options = {});

/// Every ordering pair for which (A, A*) is Hessenberg, sorted
/// lexicographically by eigenvalue sequences. The two conditions involve
/// disjoint orderings, so the result is a product of the two one-sided sets.
std::vector<OrderingPair> find_hessenberg_orderings(const EigenStructure& eigen_a,
                                                    const EigenStructure& eigen_astar,
                                                    const SearchOptions& options = {});
std::vector<OrderingPair> find_hessenberg_orderings(const Matrix& a, const Matrix& astar,
                                                    const SearchOptions& options = {});
std::vector<OrderingPair> find_hessenberg_orderings_brute_force(const EigenStructure& eigen_a,
                                                                const EigenStructure& eigen_astar,
                                                                const SearchOptions& options = {});

/// V_ij = (V_0 + ... + V_i) ∩ (V*_0 + ... + V*_j) for -1 <= i <= d+1, -1 <= j <= δ+1.
class VijLattice {
 public:
  VijLattice(const OrderedEigenData& ord_a, const OrderedEigenData& ord_astar);

  std::size_t d() const noexcept { return d_; }
  std::size_t delta() const noexcept { return delta_; }
  /// Throws IndexOutOfRange outside the table.
  const Subspace& cell(long i, long j) const;

 private:
  std::size_t d_;
  std::size_t delta_;
  std::vector<Subspace> cells_;  // row-major over (i + 1, j + 1)
};

VijLattice build_vij_lattice(const OrderedEigenData& ord_a, const OrderedEigenData& ord_astar);

/// W_r = V_{0,r} + V_{1,r-1} + ... + V_{r,0}, for 0 <= r <= min(d, δ).
Subspace wr_witness(const VijLattice& lattice, std::size_t r);

struct SplitDecomposition {
  std::vector<Subspace> subspaces;
  std::vector<FieldElement> theta;
  std::vector<FieldElement> theta_star;

  std::size_t d() const noexcept { return subspaces.size() - 1; }
  friend bool operator==(const SplitDecomposition&, const SplitDecomposition&) = default;
};

/// U_i = V_{d-i,i}. Requires an Irreducible verdict; re-checks the Hessenberg
/// condition, d = δ, the decomposition property and the split inclusions.
SplitDecomposition construct_split_from_hessenberg(const Matrix& a, const Matrix& astar,
                                                   const OrderedEigenData& ord_a,
                                                   const OrderedEigenData& ord_astar,
                                                   Irreducibility irreducibility);

/// U_i = (V*_0 + ... + V*_i) ∩ (V_0 + ... + V_{d-i}). Not verified.
SplitDecomposition split_from_formula(const OrderedEigenData& ord_a, const OrderedEigenData& ord_astar);

struct SplitCheck {
  bool valid = false;
  /// Human-readable description of the first violated condition.
  std::string violation;
};

/// Checks that the candidate is a decomposition of V with
/// (A - θ_{d-i} I) U_i ⊆ U_{i+1} and (A* - θ*_i I) U_i ⊆ U_{i-1}.
SplitCheck check_split(const Matrix& a, const Matrix& astar, const SplitDecomposition& candidate);
bool verify_split(const Matrix& a, const Matrix& astar, const SplitDecomposition& candidate);

/// U_i + ... + U_d = V_0 + ... + V_{d-i} and U_0 + ... + U_i = V*_0 + ... + V*_i for all i.
bool split_flags_match(const SplitDecomposition& split, const OrderedEigenData& ord_a,
                       const OrderedEigenData& ord_astar);

/// From a valid split decomposition: both flag families match the eigen
/// flags and the pair is Hessenberg for the orderings given by θ and θ*.
/// Throws SplitInvalid if the split does not verify.
bool recover_hessenberg_from_split(const Matrix& a, const Matrix& astar, const SplitDecomposition& split);

struct DimensionProfile {
  std::vector<std::size_t> eigen_a;      // dim V_{d-i}
  std::vector<std::size_t> eigen_astar;  // dim V*_i
  std::vector<std::size_t> split;        // dim U_i

  /// Indices i at which the three dimensions disagree.
  std::vector<std::size_t> mismatches() const;
  bool consistent() const { return mismatches().empty(); }
};

DimensionProfile dimension_profile(const SplitDecomposition& split, const OrderedEigenData& ord_a,
                                   const OrderedEigenData& ord_astar);

enum class Tridiagonality { Tridiagonal, NotTridiagonal, Undetermined };
std::string_view to_string(Tridiagonality t);

struct TridiagonalVerdict {
  Tridiagonality status = Tridiagonality::NotTridiagonal;
  /// Ordering pairs satisfying the three-term inclusions on both sides.
  std::vector<OrderingPair> orderings;
};

/// Tridiagonal with respect to an ordering pair iff irreducible and
/// Hessenberg with respect to it and to the pair of reversed orderings. Every
/// verdict is cross-checked against the direct three-term inclusions;
/// disagreement throws OracleDisagreement.
TridiagonalVerdict is_tridiagonal_pair(const EigenStructure& eigen_a, const EigenStructure& eigen_astar,
                                       Irreducibility irreducibility, const SearchOptions& options = {});
TridiagonalVerdict is_tridiagonal_pair(const Matrix& a, const Matrix& astar, const SearchOptions& options = {},
                                       const IrreducibilityOptions& irreducibility_options = {});

}  // namespace hesspair

#endif  // HESSPAIR_HESSENBERG_HPP
