#ifndef HESSPAIR_SPECTRAL_HPP
#define HESSPAIR_SPECTRAL_HPP

#include <span>
#include <vector>

#include "hesspair/linalg.hpp"

namespace hesspair {

/// Coefficients are stored low degree first. The zero polynomial has no
/// coefficients; otherwise the last coefficient is nonzero.
class Polynomial {
 public:
  Polynomial(FieldSpec spec, std::vector<FieldElement> coefficients);

  const FieldSpec& spec() const noexcept { return spec_; }
  const std::vector<FieldElement>& coefficients() const noexcept { return coefficients_; }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coefficients_.size()) - 1; }
  bool is_zero() const noexcept { return coefficients_.empty(); }

  FieldElement operator()(const FieldElement& x) const;
  /// p(M) by Horner's rule.
  Matrix operator()(const Matrix& m) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string to_string() const;

 private:
  FieldSpec spec_;
  std::vector<FieldElement> coefficients_;
};

/// Monic characteristic polynomial det(xI - M), computed with Berkowitz's
/// division-free recurrence so it is valid in every characteristic.
Polynomial char_poly(const Matrix& m);

/// Distinct roots of p lying in the ground field, in canonical order.
std::vector<FieldElement> roots_in_field(const Polynomial& p);

struct EigenStructure {
  Matrix transform;
  /// Distinct eigenvalues in canonical order (ascending residue / ascending value).
  std::vector<FieldElement> eigenvalues;
  /// eigenspaces[i] = kernel(transform - eigenvalues[i] I).
  std::vector<Subspace> eigenspaces;
  bool diagonalizable = false;

  /// Number of eigenvalues minus one.
  std::size_t d() const noexcept { return eigenvalues.size() - 1; }
  std::size_t n() const noexcept { return transform.rows(); }
};

/// Throws EigenvaluesOutsideField when the characteristic polynomial does not
/// split over the ground field.
EigenStructure eigen_structure(const Matrix& m);

/// Checks (M - thetas[i] I) parts[i] ⊆ parts[i+1] for every i, with the part
/// past the end taken as 0. When this holds M is diagonalizable with
/// eigenvalues exactly `thetas`.
bool verify_split_shape_diagonalizable(const Matrix& m, std::span<const Subspace> parts,
                                       std::span<const FieldElement> thetas);

}  // namespace hesspair

#endif  // HESSPAIR_SPECTRAL_HPP
