#include "hesspair/field.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace hesspair {

namespace {

std::uint32_t reduce_mod(long value, std::uint32_t p) {
  long r = value % static_cast<long>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint32_t p) {
  std::uint64_t result = 1;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t f = 3; f * f <= n; f += 2) {
    if (n % f == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31) || !is_prime(p)) {
    throw Error(ErrorCode::InvalidField,
                "GF(p) requires a prime p < 2^31, got " + std::to_string(p));
  }
  return FieldSpec(FieldKind::PrimeField, static_cast<std::uint32_t>(p));
}

std::string FieldSpec::to_string() const {
  return kind_ == FieldKind::Rationals ? "Q" : "GF(" + std::to_string(p_) + ")";
}

FieldElement::FieldElement(FieldSpec spec) : spec_(spec) {
  if (spec_.kind() == FieldKind::Rationals) {
    value_ = mpq_class(0);
  } else {
    value_ = std::uint32_t{0};
  }
}

FieldElement::FieldElement(FieldSpec spec, long value) : spec_(spec) {
  if (spec_.kind() == FieldKind::Rationals) {
    value_ = mpq_class(value);
  } else {
    value_ = reduce_mod(value, spec_.p());
  }
}

FieldElement::FieldElement(FieldSpec spec, const mpq_class& value) : spec_(spec) {
  if (spec_.kind() == FieldKind::Rationals) {
    mpq_class q(value);
    q.canonicalize();
    value_ = std::move(q);
    return;
  }
  mpz_class num = value.get_num();
  mpz_class den = value.get_den();
  mpz_class p(static_cast<unsigned long>(spec_.p()));
  mpz_class r_num, r_den;
  mpz_fdiv_r(r_num.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
  mpz_fdiv_r(r_den.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  if (r_den == 0) throw Error(ErrorCode::DivisionByZero, "denominator vanishes mod p");
  FieldElement n(spec_, static_cast<long>(r_num.get_ui()));
  FieldElement d(spec_, static_cast<long>(r_den.get_ui()));
  value_ = (n / d).residue();
}

FieldElement FieldElement::parse(FieldSpec spec, std::string_view text) {
  auto fail = [&]() -> FieldElement {
    throw Error(ErrorCode::ParseError,
                "cannot parse '" + std::string(text) + "' as an element of " + spec.to_string());
  };
  if (spec.kind() == FieldKind::PrimeField) {
    if (!is_integer_text(text) || text[0] == '-' || text[0] == '+') return fail();
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || v >= spec.p()) return fail();
    return FieldElement(spec, static_cast<long>(v));
  }
  auto slash = text.find('/');
  std::string_view num_text = text.substr(0, slash);
  if (!is_integer_text(num_text) || num_text[0] == '+') return fail();
  mpz_class num(std::string(num_text), 10);
  mpz_class den(1);
  if (slash != std::string_view::npos) {
    std::string_view den_text = text.substr(slash + 1);
    if (!is_integer_text(den_text) || den_text[0] == '-' || den_text[0] == '+') return fail();
    den = mpz_class(std::string(den_text), 10);
    if (den == 0) return fail();
  }
  return FieldElement(spec, mpq_class(num, den));
}

bool FieldElement::is_zero() const noexcept {
  if (const auto* r = std::get_if<std::uint32_t>(&value_)) return *r == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool FieldElement::is_one() const noexcept {
  if (const auto* r = std::get_if<std::uint32_t>(&value_)) return *r == 1;
  return std::get<mpq_class>(value_) == 1;
}

std::uint32_t FieldElement::residue() const {
  if (const auto* r = std::get_if<std::uint32_t>(&value_)) return *r;
  throw Error(ErrorCode::MixedFields, "residue() requested for a rational element");
}

const mpq_class& FieldElement::rational() const {
  if (const auto* q = std::get_if<mpq_class>(&value_)) return *q;
  throw Error(ErrorCode::MixedFields, "rational() requested for a GF(p) element");
}

void FieldElement::require_same_field(const FieldElement& other) const {
  if (spec_ != other.spec_) {
    throw Error(ErrorCode::MixedFields,
                "operands live in " + spec_.to_string() + " and " + other.spec_.to_string());
  }
}

FieldElement FieldElement::inv() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  FieldElement out(spec_);
  if (const auto* r = std::get_if<std::uint32_t>(&value_)) {
    out.value_ = pow_mod(*r, spec_.p() - 2, spec_.p());
  } else {
    mpq_class q = 1 / std::get<mpq_class>(value_);
    q.canonicalize();
    out.value_ = std::move(q);
  }
  return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  require_same_field(other);
  if (auto* r = std::get_if<std::uint32_t>(&value_)) {
    std::uint64_t s = std::uint64_t{*r} + std::get<std::uint32_t>(other.value_);
    *r = static_cast<std::uint32_t>(s >= spec_.p() ? s - spec_.p() : s);
  } else {
    std::get<mpq_class>(value_) += std::get<mpq_class>(other.value_);
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) {
  require_same_field(other);
  if (auto* r = std::get_if<std::uint32_t>(&value_)) {
    std::uint32_t b = std::get<std::uint32_t>(other.value_);
    *r = *r >= b ? *r - b : static_cast<std::uint32_t>(std::uint64_t{*r} + spec_.p() - b);
  } else {
    std::get<mpq_class>(value_) -= std::get<mpq_class>(other.value_);
  }
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& other) {
  require_same_field(other);
  if (auto* r = std::get_if<std::uint32_t>(&value_)) {
    *r = static_cast<std::uint32_t>(std::uint64_t{*r} * std::get<std::uint32_t>(other.value_) %
                                    spec_.p());
  } else {
    std::get<mpq_class>(value_) *= std::get<mpq_class>(other.value_);
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& other) {
  require_same_field(other);
  return *this *= other.inv();
}

FieldElement FieldElement::operator-() const {
  FieldElement out(spec_);
  return out -= *this;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.spec_ == b.spec_ && a.value_ == b.value_;
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
  a.require_same_field(b);
  if (const auto* r = std::get_if<std::uint32_t>(&a.value_)) {
    return *r <=> std::get<std::uint32_t>(b.value_);
  }
  int c = cmp(std::get<mpq_class>(a.value_), std::get<mpq_class>(b.value_));
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string FieldElement::to_string() const {
  if (const auto* r = std::get_if<std::uint32_t>(&value_)) return std::to_string(*r);
  const auto& q = std::get<mpq_class>(value_);
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::vector<FieldElement> enumerate_field(FieldSpec spec) {
  if (!spec.is_prime_field()) {
    throw Error(ErrorCode::InfiniteField, "cannot enumerate the rationals");
  }
  std::vector<FieldElement> out;
  out.reserve(spec.p());
  for (std::uint32_t r = 0; r < spec.p(); ++r) out.emplace_back(spec, static_cast<long>(r));
  return out;
}

}  // namespace hesspair
