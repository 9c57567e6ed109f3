#ifndef HESSPAIR_LINALG_HPP
#define HESSPAIR_LINALG_HPP

// Dense exact matrices and the subspace lattice of K^n.
//
// Vectors are column vectors: a Matrix acts by v -> M v. A Subspace stores
// its basis as the rows of a matrix in reduced row-echelon form, so two
// Subspace values compare equal exactly when they are the same subspace.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hesspair/field.hpp"

namespace hesspair {

using Vector = std::vector<FieldElement>;

Vector zero_vector(FieldSpec spec, std::size_t n);
Vector unit_vector(FieldSpec spec, std::size_t n, std::size_t index);
bool is_zero(std::span<const FieldElement> v);

class Matrix {
 public:
  Matrix(FieldSpec spec, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldSpec spec, std::size_t n);
  static Matrix scalar(FieldSpec spec, std::size_t n, const FieldElement& value);
  /// Rows must all have length `cols`. `cols` is needed for zero-row matrices.
  static Matrix from_rows(FieldSpec spec, std::size_t cols, const std::vector<Vector>& rows);
  static Matrix from_ints(FieldSpec spec, std::initializer_list<std::initializer_list<long>> rows);

  const FieldSpec& spec() const noexcept { return spec_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  FieldElement& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const FieldElement& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  std::span<const FieldElement> row(std::size_t r) const {
    return {entries_.data() + r * cols_, cols_};
  }
  std::vector<Vector> row_vectors() const;

  bool is_zero() const;
  Matrix transpose() const;
  /// M v for a column vector v of length cols().
  Vector apply(std::span<const FieldElement> v) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const FieldElement& s, Matrix m);

  friend bool operator==(const Matrix&, const Matrix&) = default;

  std::string to_string() const;

 private:
  FieldSpec spec_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<FieldElement> entries_;
};

/// M - value * I.
Matrix shifted(const Matrix& m, const FieldElement& value);
/// Throws SingularMatrix when m has no inverse.
Matrix inverse(const Matrix& m);

struct RrefResult;

class Subspace {
 public:
  static Subspace zero(FieldSpec spec, std::size_t ambient_dim);
  static Subspace full(FieldSpec spec, std::size_t ambient_dim);
  static Subspace span(FieldSpec spec, std::size_t ambient_dim, const std::vector<Vector>& vectors);
  /// Row space of m.
  static Subspace row_space(const Matrix& m);

  const FieldSpec& spec() const noexcept { return basis_.spec(); }
  std::size_t ambient_dim() const noexcept { return basis_.cols(); }
  std::size_t dim() const noexcept { return basis_.rows(); }
  bool is_zero() const noexcept { return dim() == 0; }
  bool is_full() const noexcept { return dim() == ambient_dim(); }

  /// Canonical basis: rows of a reduced row-echelon matrix with no zero rows.
  const Matrix& basis() const noexcept { return basis_; }
  std::vector<Vector> vectors() const { return basis_.row_vectors(); }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(std::span<const FieldElement> v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

  std::string to_string() const;

 private:
  Subspace(Matrix basis, std::vector<std::size_t> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  friend RrefResult rref(const Matrix& m);

  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

struct RrefResult {
  Subspace space;
  std::size_t rank;
};

/// Canonical basis of the row space of m, and its rank.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);
/// {v : m v = 0}, a subspace of K^cols.
Subspace kernel(const Matrix& m);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
/// Zassenhaus: row-reduce [[a a] [b 0]]; the rows with vanishing left half
/// span a ∩ b on their right half.
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
/// True iff b ⊆ a.
bool subspace_contains(const Subspace& a, const Subspace& b);
/// Image {m v : v ∈ s}.
Subspace apply(const Matrix& m, const Subspace& s);
/// The subspace annihilated by every vector of s under the standard pairing.
Subspace annihilator(const Subspace& s);

/// Sum of a list of subspaces of the same ambient space.
Subspace sum_all(FieldSpec spec, std::size_t ambient_dim, std::span<const Subspace> parts);
/// True iff the parts are nonzero, independent, and sum to K^n.
bool is_decomposition(std::span<const Subspace> parts, std::size_t ambient_dim);

/// Incrementally grown echelon basis, used where vectors arrive one at a
/// time (spinning, algebra closure).
class EchelonBuilder {
 public:
  EchelonBuilder(FieldSpec spec, std::size_t ambient_dim);

  /// Reduces v against the current basis in place.
  void reduce(Vector& v) const;
  bool contains(std::span<const FieldElement> v) const;
  /// Adds v if it is independent of the current basis; returns whether it was added.
  bool insert(Vector v);

  std::size_t dim() const noexcept { return rows_.size(); }
  std::size_t ambient_dim() const noexcept { return ambient_dim_; }
  Subspace to_subspace() const;

 private:
  FieldSpec spec_;
  std::size_t ambient_dim_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace hesspair

#endif  // HESSPAIR_LINALG_HPP
