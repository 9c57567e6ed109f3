#ifndef HESSPAIR_FIELD_HPP
#define HESSPAIR_FIELD_HPP

// Exact scalars over the rationals and over prime fields GF(p).

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "hesspair/error.hpp"

namespace hesspair {

enum class FieldKind { Rationals, PrimeField };

class FieldSpec {
 public:
  /// The rational numbers.
  static FieldSpec rationals() noexcept { return FieldSpec(FieldKind::Rationals, 0); }
  /// GF(p). Throws InvalidField unless p is a prime below 2^31.
  static FieldSpec prime(std::uint64_t p);

  FieldKind kind() const noexcept { return kind_; }
  bool is_prime_field() const noexcept { return kind_ == FieldKind::PrimeField; }
  /// Characteristic of GF(p); 0 for the rationals.
  std::uint32_t p() const noexcept { return p_; }

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(FieldKind kind, std::uint32_t p) noexcept : kind_(kind), p_(p) {}

  FieldKind kind_;
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// An element of a FieldSpec, always held in canonical form: a reduced
/// fraction with positive denominator, or a residue in [0, p).
class FieldElement {
 public:
  FieldElement() : FieldElement(FieldSpec::rationals()) {}
  explicit FieldElement(FieldSpec spec);
  FieldElement(FieldSpec spec, long value);
  FieldElement(FieldSpec spec, const mpq_class& value);

  static FieldElement zero(FieldSpec spec) { return FieldElement(spec); }
  static FieldElement one(FieldSpec spec) { return FieldElement(spec, 1L); }
  /// Parses the text form: "n" or "n/d" over Q, an integer in [0, p) over GF(p).
  static FieldElement parse(FieldSpec spec, std::string_view text);

  const FieldSpec& spec() const noexcept { return spec_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  /// Residue in [0, p). Only valid over GF(p).
  std::uint32_t residue() const;
  /// Exact rational value. Only valid over Q.
  const mpq_class& rational() const;

  FieldElement inv() const;

  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator-=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);
  FieldElement& operator/=(const FieldElement& other);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);

  /// Canonical order used for deterministic output: ascending residue over
  /// GF(p), ascending numeric value over Q.
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b);

  std::string to_string() const;

 private:
  void require_same_field(const FieldElement& other) const;

  FieldSpec spec_;
  std::variant<std::uint32_t, mpq_class> value_;
};

/// All p residues of GF(p) in ascending order. Throws InfiniteField over Q.
std::vector<FieldElement> enumerate_field(FieldSpec spec);

}  // namespace hesspair

#endif  // HESSPAIR_FIELD_HPP
