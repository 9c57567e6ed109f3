#include "hesspair/spectral.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>

namespace hesspair {

namespace {

using Coeffs = std::vector<FieldElement>;

void trim(Coeffs& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// Synthetic division by (x - r); returns the remainder.
FieldElement divide_linear(Coeffs& c, const FieldElement& r) {
  if (c.empty()) return FieldElement::zero(r.spec());
  FieldElement carry = FieldElement::zero(r.spec());
  Coeffs q(c.size() - 1, FieldElement::zero(r.spec()));
  for (std::size_t i = c.size(); i-- > 0;) {
    FieldElement value = c[i] + carry * r;
    if (i == 0) {
      c = std::move(q);
      return value;
    }
    q[i - 1] = value;
    carry = value;
  }
  return carry;
}

std::size_t multiplicity(Coeffs c, const FieldElement& r) {
  std::size_t m = 0;
  while (c.size() > 1) {
    Coeffs trial = c;
    if (!divide_linear(trial, r).is_zero()) break;
    c = std::move(trial);
    ++m;
  }
  return m;
}

// ---- polynomial arithmetic over GF(p) for large-p root finding ----

Coeffs poly_mod(Coeffs a, const Coeffs& m) {
  trim(a);
  const FieldElement lead_inv = m.back().inv();
  while (a.size() >= m.size()) {
    FieldElement factor = a.back() * lead_inv;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] -= factor * m[i];
    trim(a);
  }
  return a;
}

Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, FieldElement::zero(m.front().spec()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return poly_mod(std::move(out), m);
}

Coeffs poly_powmod(Coeffs base, std::uint64_t exp, const Coeffs& m) {
  Coeffs result{FieldElement::one(m.front().spec())};
  base = poly_mod(std::move(base), m);
  while (exp > 0) {
    if (exp & 1U) result = poly_mulmod(result, base, m);
    base = poly_mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

Coeffs poly_gcd(Coeffs a, Coeffs b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    FieldElement inv = a.back().inv();
    for (auto& x : a) x *= inv;
  }
  return a;
}

Coeffs poly_exact_div(Coeffs a, const Coeffs& b) {
  Coeffs q(a.size() - b.size() + 1, FieldElement::zero(b.front().spec()));
  const FieldElement lead_inv = b.back().inv();
  while (a.size() >= b.size() && !a.empty()) {
    FieldElement factor = a.back() * lead_inv;
    std::size_t shift = a.size() - b.size();
    q[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    trim(a);
  }
  return q;
}

// g is monic and a product of distinct linear factors; split it by
// gcd(g, (x + a)^((p-1)/2) - 1) for pseudo-random shifts a.
void split_linear_factors(const Coeffs& g, std::mt19937_64& rng, std::vector<FieldElement>& out) {
  const FieldSpec spec = g.front().spec();
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    out.push_back(-g[0]);
    return;
  }
  const std::uint32_t p = spec.p();
  for (;;) {
    FieldElement shift(spec, static_cast<long>(rng() % p));
    Coeffs h = poly_powmod(Coeffs{shift, FieldElement::one(spec)}, (p - 1) / 2, g);
    if (h.empty()) h.push_back(FieldElement::zero(spec));
    h[0] -= FieldElement::one(spec);
    Coeffs f = poly_gcd(g, h);
    if (f.size() > 1 && f.size() < g.size()) {
      split_linear_factors(f, rng, out);
      split_linear_factors(poly_exact_div(g, f), rng, out);
      return;
    }
  }
}

std::vector<FieldElement> prime_field_roots(const Coeffs& c) {
  const FieldSpec spec = c.front().spec();
  std::vector<FieldElement> roots;
  if (spec.p() <= (1U << 16)) {
    for (const auto& x : enumerate_field(spec)) {
      FieldElement acc = FieldElement::zero(spec);
      for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
      if (acc.is_zero()) roots.push_back(x);
    }
    return roots;
  }
  Coeffs monic = c;
  FieldElement inv = monic.back().inv();
  for (auto& x : monic) x *= inv;
  Coeffs xp = poly_powmod(Coeffs{FieldElement::zero(spec), FieldElement::one(spec)}, spec.p(), monic);
  xp.resize(std::max<std::size_t>(xp.size(), 2), FieldElement::zero(spec));
  xp[1] -= FieldElement::one(spec);
  trim(xp);
  Coeffs g = poly_gcd(monic, xp);
  std::mt19937_64 rng(0x5eed);
  split_linear_factors(g, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---- rational roots ----
//
// The square-free part s has simple roots. Its roots modulo a prime q that
// keeps them simple lift uniquely to q-adic roots; a rational root u/v has
// |u| <= |s(0)| and v <= |lead(s)|, so once q^k > 2 |s(0)| |lead(s)| it is
// recovered from its q-adic image by rational reconstruction.

std::vector<mpz_class> primitive_integer_coefficients(const Coeffs& c) {
  mpz_class common_den = 1;
  for (const auto& x : c) {
    mpz_lcm(common_den.get_mpz_t(), common_den.get_mpz_t(), x.rational().get_den().get_mpz_t());
  }
  std::vector<mpz_class> ints;
  mpz_class content = 0;
  for (const auto& x : c) {
    ints.push_back(mpz_class(x.rational().get_num() * (common_den / x.rational().get_den())));
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), ints.back().get_mpz_t());
  }
  for (auto& x : ints) x /= content;
  return ints;
}

mpz_class eval_mod(const std::vector<mpz_class>& ints, const mpz_class& x, const mpz_class& m) {
  mpz_class acc = 0;
  for (std::size_t i = ints.size(); i-- > 0;) acc = (acc * x + ints[i]) % m;
  if (acc < 0) acc += m;
  return acc;
}

std::vector<mpz_class> derivative(const std::vector<mpz_class>& ints) {
  std::vector<mpz_class> out;
  for (std::size_t i = 1; i < ints.size(); ++i) out.push_back(ints[i] * static_cast<unsigned long>(i));
  return out;
}

// Simple roots of ints modulo q, or nullopt if some root mod q is repeated.
std::optional<std::vector<unsigned long>> simple_roots_mod(const std::vector<mpz_class>& ints,
                                                           const std::vector<mpz_class>& deriv, unsigned long q) {
  std::vector<std::uint64_t> c;
  std::vector<std::uint64_t> dc;
  for (const auto& x : ints) c.push_back(mpz_fdiv_ui(x.get_mpz_t(), q));
  for (const auto& x : deriv) dc.push_back(mpz_fdiv_ui(x.get_mpz_t(), q));
  auto eval = [q](const std::vector<std::uint64_t>& coeffs, std::uint64_t x) {
    std::uint64_t acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = (acc * x + coeffs[i]) % q;
    return acc;
  };
  std::vector<unsigned long> roots;
  for (std::uint64_t a = 0; a < q; ++a) {
    if (eval(c, a) != 0) continue;
    if (eval(dc, a) == 0) return std::nullopt;
    roots.push_back(static_cast<unsigned long>(a));
  }
  return roots;
}

std::optional<mpq_class> reconstruct(const mpz_class& a, const mpz_class& m, const mpz_class& num_bound,
                                     const mpz_class& den_bound) {
  mpz_class r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 > num_bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (t1 == 0 || abs(t1) > den_bound) return std::nullopt;
  mpq_class out(r1, t1);
  out.canonicalize();
  return out;
}

std::vector<FieldElement> rational_roots(const Coeffs& c) {
  const FieldSpec spec = c.front().spec();
  std::vector<FieldElement> roots;
  std::size_t low = 0;
  while (low < c.size() && c[low].is_zero()) ++low;
  if (low > 0) roots.push_back(FieldElement::zero(spec));
  Coeffs f(c.begin() + static_cast<std::ptrdiff_t>(low), c.end());
  if (f.size() <= 1) return roots;

  Coeffs df;
  for (std::size_t i = 1; i < f.size(); ++i) df.push_back(FieldElement(spec, static_cast<long>(i)) * f[i]);
  Coeffs g = poly_gcd(f, df);
  Coeffs squarefree = g.size() > 1 ? poly_exact_div(f, g) : f;
  const auto ints = primitive_integer_coefficients(squarefree);
  const auto deriv = derivative(ints);
  const mpz_class num_bound = abs(ints.front());
  const mpz_class den_bound = abs(ints.back());
  const mpz_class needed = 2 * num_bound * den_bound;

  mpz_class prime = 2;
  std::vector<unsigned long> modular;
  for (;;) {
    mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
    if (mpz_divisible_p(den_bound.get_mpz_t(), prime.get_mpz_t())) continue;
    auto found = simple_roots_mod(ints, deriv, prime.get_ui());
    if (!found) continue;
    modular = std::move(*found);
    break;
  }
  for (unsigned long r : modular) {
    mpz_class a = r;
    mpz_class m = prime;
    while (m <= needed) {
      m *= m;
      mpz_class slope = eval_mod(deriv, a, m);
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), slope.get_mpz_t(), m.get_mpz_t());
      a = (a - eval_mod(ints, a, m) * inv) % m;
      if (a < 0) a += m;
    }
    auto candidate = reconstruct(a, m, num_bound, den_bound);
    if (!candidate) continue;
    FieldElement x(spec, *candidate);
    FieldElement acc = FieldElement::zero(spec);
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    if (acc.is_zero()) roots.push_back(std::move(x));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace

Polynomial::Polynomial(FieldSpec spec, std::vector<FieldElement> coefficients)
    : spec_(spec), coefficients_(std::move(coefficients)) {
  for (const auto& c : coefficients_) {
    if (c.spec() != spec_) throw Error(ErrorCode::MixedFields, "polynomial coefficient field");
  }
  trim(coefficients_);
}

FieldElement Polynomial::operator()(const FieldElement& x) const {
  FieldElement acc = FieldElement::zero(spec_);
  for (std::size_t i = coefficients_.size(); i-- > 0;) acc = acc * x + coefficients_[i];
  return acc;
}

Matrix Polynomial::operator()(const Matrix& m) const {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "polynomial of a non-square matrix");
  Matrix acc(spec_, m.rows(), m.cols());
  for (std::size_t i = coefficients_.size(); i-- > 0;) {
    acc = acc * m + Matrix::scalar(spec_, m.rows(), coefficients_[i]);
  }
  return acc;
}

std::string Polynomial::to_string() const {
  if (coefficients_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coefficients_.size(); i-- > 0;) {
    if (coefficients_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << coefficients_[i].to_string();
    if (i > 0) os << "*x^" << i;
  }
  return os.str();
}

Polynomial char_poly(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "characteristic polynomial needs a square matrix");
  const FieldSpec spec = m.spec();
  const std::size_t n = m.rows();
  // Berkowitz: with A_{k+1} = [[A_k, c], [r, a]], the coefficient vector
  // (highest degree first) satisfies p_{k+1} = T p_k where T is the lower
  // triangular Toeplitz matrix with first column (1, -a, -r c, -r A_k c, ...).
  Coeffs p{FieldElement::one(spec)};
  for (std::size_t k = 0; k < n; ++k) {
    Coeffs t(k + 2, FieldElement::zero(spec));
    t[0] = FieldElement::one(spec);
    t[1] = -m(k, k);
    Vector power(k);
    for (std::size_t i = 0; i < k; ++i) power[i] = m(i, k);  // c
    for (std::size_t j = 2; j < k + 2; ++j) {
      FieldElement rc = FieldElement::zero(spec);
      for (std::size_t i = 0; i < k; ++i) rc += m(k, i) * power[i];
      t[j] = -rc;
      Vector next(k, FieldElement::zero(spec));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t l = 0; l < k; ++l) next[i] += m(i, l) * power[l];
      }
      power = std::move(next);
    }
    Coeffs q(k + 2, FieldElement::zero(spec));
    for (std::size_t i = 0; i < k + 2; ++i) {
      for (std::size_t j = 0; j <= std::min(i, k); ++j) q[i] += t[i - j] * p[j];
    }
    p = std::move(q);
  }
  std::reverse(p.begin(), p.end());
  return Polynomial(spec, std::move(p));
}

std::vector<FieldElement> roots_in_field(const Polynomial& p) {
  if (p.degree() <= 0) return {};
  if (p.spec().is_prime_field()) return prime_field_roots(p.coefficients());
  return rational_roots(p.coefficients());
}

EigenStructure eigen_structure(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NotSquare, "eigen structure needs a square matrix");
  if (m.rows() == 0) throw Error(ErrorCode::InvalidArgument, "eigen structure of a 0x0 matrix");
  const Polynomial chi = char_poly(m);
  EigenStructure out{m, roots_in_field(chi), {}, false};
  std::size_t algebraic = 0;
  for (const auto& theta : out.eigenvalues) algebraic += multiplicity(chi.coefficients(), theta);
  if (algebraic < m.rows()) {
    throw Error(ErrorCode::EigenvaluesOutsideField,
                "characteristic polynomial " + chi.to_string() + " has an irreducible factor of degree " +
                    std::to_string(m.rows() - algebraic) + " with no roots in " + m.spec().to_string());
  }
  std::size_t geometric = 0;
  for (const auto& theta : out.eigenvalues) {
    out.eigenspaces.push_back(kernel(shifted(m, theta)));
    geometric += out.eigenspaces.back().dim();
  }
  out.diagonalizable = geometric == m.rows();
  return out;
}

bool verify_split_shape_diagonalizable(const Matrix& m, std::span<const Subspace> parts,
                                       std::span<const FieldElement> thetas) {
  if (parts.size() != thetas.size()) {
    throw Error(ErrorCode::LengthMismatch, "decomposition and eigenvalue lists differ in length");
  }
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    for (std::size_t j = i + 1; j < thetas.size(); ++j) {
      if (thetas[i] == thetas[j]) {
        throw Error(ErrorCode::DuplicateEigenvalue, "eigenvalue " + thetas[i].to_string() + " repeated");
      }
    }
  }
  if (!m.is_square() || !is_decomposition(parts, m.rows())) {
    throw Error(ErrorCode::NotADecomposition, "parts do not form a direct sum decomposition");
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    Subspace image = apply(shifted(m, thetas[i]), parts[i]);
    if (i + 1 == parts.size()) {
      if (!image.is_zero()) return false;
    } else if (!subspace_contains(parts[i + 1], image)) {
      return false;
    }
  }
  return true;
}

}  // namespace hesspair
