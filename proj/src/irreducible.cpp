#include "hesspair/irreducible.hpp"

#include <deque>
#include <random>

#include "hesspair/spectral.hpp"

namespace hesspair {

std::string_view to_string(Irreducibility status) {
  switch (status) {
    case Irreducibility::Irreducible: return "Irreducible";
    case Irreducibility::Reducible: return "Reducible";
    case Irreducibility::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

std::string_view to_string(IrreducibilityMethod method) {
  switch (method) {
    case IrreducibilityMethod::BruteForce: return "BruteForce";
    case IrreducibilityMethod::MeatAxe: return "MeatAxe";
    case IrreducibilityMethod::AlgebraDimension: return "AlgebraDimension";
    case IrreducibilityMethod::SpinProbe: return "SpinProbe";
    case IrreducibilityMethod::Commutant: return "Commutant";
  }
  return "SpinProbe";
}

namespace {

void require_same_size(std::span<const Matrix> generators) {
  if (generators.empty()) throw Error(ErrorCode::InvalidArgument, "no generators");
  const auto& first = generators.front();
  for (const auto& g : generators) {
    if (!g.is_square() || g.rows() != first.rows() || g.spec() != first.spec()) {
      throw Error(ErrorCode::SizeMismatch, "generators must be square matrices of one size over one field");
    }
  }
}

Vector flatten(const Matrix& m) {
  Vector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    v.insert(v.end(), row.begin(), row.end());
  }
  return v;
}

// Number of projective points of GF(p)^n, saturating at `cap + 1`.
std::uint64_t projective_points(std::uint32_t p, std::size_t n, std::uint64_t cap) {
  std::uint64_t count = 0;
  std::uint64_t power = 1;  // p^k
  for (std::size_t k = 0; k < n; ++k) {
    count += power;
    if (count > cap) return cap + 1;
    power *= p;
    if (power > cap) power = cap + 1;
  }
  return count;
}

// Calls visit(v) for one representative (leading coordinate 1) of every
// projective point of the row space of `space`; stops when visit returns true.
template <typename Visit>
bool for_each_projective_point(const Subspace& space, Visit&& visit) {
  const FieldSpec spec = space.spec();
  const std::size_t k = space.dim();
  const auto basis = space.vectors();
  for (std::size_t lead = 0; lead < k; ++lead) {
    // Coefficient vector (0, ..., 0, 1, c_{lead+1}, ..., c_{k-1}).
    std::vector<std::uint32_t> tail(k - lead - 1, 0);
    for (;;) {
      Vector v = basis[lead];
      for (std::size_t t = 0; t < tail.size(); ++t) {
        if (tail[t] == 0) continue;
        FieldElement c(spec, static_cast<long>(tail[t]));
        const auto& b = basis[lead + 1 + t];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * b[i];
      }
      if (visit(v)) return true;
      std::size_t i = 0;
      while (i < tail.size() && ++tail[i] == spec.p()) tail[i++] = 0;
      if (i == tail.size()) break;
    }
  }
  return false;
}

// Basis of the matrices commuting with every generator. With a
// diagonalizable generator available, unknowns are restricted to its
// eigenspace blocks, which commuting matrices must preserve.
std::vector<Matrix> commutant(std::span<const Matrix> gens, const std::vector<EigenStructure>& diagonalizable) {
  const FieldSpec spec = gens.front().spec();
  const std::size_t n = gens.front().rows();
  Matrix basis_change = Matrix::identity(spec, n);
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;  // (row, col) in the adapted basis
  const EigenStructure* best = nullptr;
  std::size_t best_count = n * n;
  for (const auto& es : diagonalizable) {
    std::size_t count = 0;
    for (const auto& u : es.eigenspaces) count += u.dim() * u.dim();
    if (count < best_count) {
      best = &es;
      best_count = count;
    }
  }
  if (best) {
    std::vector<Vector> columns;
    std::size_t offset = 0;
    for (const auto& u : best->eigenspaces) {
      for (auto& v : u.vectors()) columns.push_back(std::move(v));
      for (std::size_t r = 0; r < u.dim(); ++r) {
        for (std::size_t c = 0; c < u.dim(); ++c) unknowns.emplace_back(offset + r, offset + c);
      }
      offset += u.dim();
    }
    basis_change = Matrix::from_rows(spec, n, columns).transpose();
  } else {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) unknowns.emplace_back(r, c);
    }
  }
  const Matrix inv = inverse(basis_change);
  Matrix system(spec, gens.size() * n * n, unknowns.size());
  std::size_t row_offset = 0;
  for (const auto& original : gens) {
    const Matrix g = inv * original * basis_change;
    // (XG - GX)(r, c) = sum_k X(r, k) G(k, c) - G(r, k) X(k, c).
    for (std::size_t k = 0; k < unknowns.size(); ++k) {
      const auto [xr, xc] = unknowns[k];
      for (std::size_t c = 0; c < n; ++c) system(row_offset + xr * n + c, k) += g(xc, c);
      for (std::size_t r = 0; r < n; ++r) system(row_offset + r * n + xc, k) -= g(r, xr);
    }
    row_offset += n * n;
  }
  std::vector<Matrix> out;
  for (const auto& v : kernel(system).vectors()) {
    Matrix x(spec, n, n);
    for (std::size_t k = 0; k < unknowns.size(); ++k) x(unknowns[k].first, unknowns[k].second) = v[k];
    out.push_back(basis_change * x * inv);
  }
  return out;
}

bool is_scalar(const Matrix& m) {
  return (m - Matrix::scalar(m.spec(), m.rows(), m(0, 0))).is_zero();
}

// Schur: a non-scalar endomorphism with an eigenvalue in the field has a
// proper invariant kernel.
std::optional<Subspace> commutant_witness(std::span<const Matrix> gens, const std::vector<EigenStructure>& diagonalizable,
                                         std::mt19937_64& rng) {
  const auto basis = commutant(gens, diagonalizable);
  if (basis.size() <= 1) return std::nullopt;
  const FieldSpec spec = gens.front().spec();
  std::vector<Matrix> candidates = basis;
  for (int draw = 0; draw < 4; ++draw) {
    Matrix z(spec, basis.front().rows(), basis.front().rows());
    for (const auto& b : basis) z += FieldElement(spec, static_cast<long>(rng() % 7) - 3) * b;
    candidates.push_back(std::move(z));
  }
  for (const auto& z : candidates) {
    if (is_scalar(z)) continue;
    for (const auto& lambda : roots_in_field(char_poly(z))) return kernel(shifted(z, lambda));
  }
  return std::nullopt;
}

// Coordinates of u in the row basis of `space`, read off at the pivots.
Vector coordinates(const Subspace& space, std::span<const FieldElement> u) {
  Vector out;
  for (std::size_t p : space.pivots()) out.push_back(u[p]);
  return out;
}

struct NortonOutcome {
  bool decided = false;
  IrreducibilityVerdict verdict;
};

// Norton's criterion for a singular M in the algebra with one-dimensional
// kernel spanned by v: irreducible iff v spins to V and a nonzero vector of
// ker M^T spins to V under the transposed generators.
NortonOutcome norton_line(const Matrix& m, const Vector& v, std::span<const Matrix> gens,
                          std::span<const Matrix> transposed, IrreducibilityMethod method) {
  Subspace s = spin(v, gens);
  if (!s.is_full()) return {true, {Irreducibility::Reducible, std::move(s), method}};
  Subspace dual_null = kernel(m.transpose());
  Subspace dual = spin(dual_null.basis().row(0), transposed);
  if (!dual.is_full()) return {true, {Irreducibility::Reducible, annihilator(dual), method}};
  return {true, {Irreducibility::Irreducible, std::nullopt, method}};
}

// With E the eigenprojection onto an eigenspace U of a diagonalizable
// generator: if E·alg·E restricts to all of End(U), it contains an element
// with kernel a line of U, and Norton's criterion decides exactly.
NortonOutcome corner_norton(const EigenStructure& es, std::size_t index, const AlgebraClosure& closure,
                            std::span<const Matrix> gens, std::span<const Matrix> transposed) {
  const Matrix& a = es.transform;
  const FieldSpec spec = a.spec();
  const std::size_t n = a.rows();
  const Subspace& u = es.eigenspaces[index];
  const std::size_t m = u.dim();
  Matrix e = Matrix::identity(spec, n);
  for (std::size_t j = 0; j < es.eigenvalues.size(); ++j) {
    if (j == index) continue;
    e = (es.eigenvalues[index] - es.eigenvalues[j]).inv() * (e * shifted(a, es.eigenvalues[j]));
  }
  const auto basis = u.vectors();
  EchelonBuilder builder(spec, m * m);
  std::vector<Matrix> corners;
  std::vector<Vector> restricted;
  for (const auto& b : closure.basis) {
    Matrix c = e * b * e;
    Vector flat(m * m, FieldElement::zero(spec));
    for (std::size_t k = 0; k < m; ++k) {
      Vector coords = coordinates(u, c.apply(basis[k]));
      for (std::size_t r = 0; r < m; ++r) flat[r * m + k] = coords[r];
    }
    if (builder.insert(flat)) {
      corners.push_back(std::move(c));
      restricted.push_back(std::move(flat));
    }
  }
  if (builder.dim() < m * m) return {};
  // Solve sum c_k R_k = diag(0, 1, ..., 1) on U.
  Matrix system(spec, m * m, corners.size() + 1);
  for (std::size_t k = 0; k < corners.size(); ++k) {
    for (std::size_t i = 0; i < m * m; ++i) system(i, k) = restricted[k][i];
  }
  for (std::size_t r = 1; r < m; ++r) system(r * m + r, corners.size()) = FieldElement::one(spec);
  for (const auto& x : kernel(system).vectors()) {
    const FieldElement last = x.back();
    if (last.is_zero()) continue;
    Matrix target = Matrix::identity(spec, n) - e;
    for (std::size_t k = 0; k < corners.size(); ++k) target += (-(x[k] / last)) * corners[k];
    if (rank(target) + 1 != n || !is_zero(target.apply(basis[0]))) return {};
    return norton_line(target, basis[0], gens, transposed, IrreducibilityMethod::MeatAxe);
  }
  return {};
}

IrreducibilityVerdict reducible(Subspace witness, IrreducibilityMethod method) {
  return {Irreducibility::Reducible, std::move(witness), method};
}

IrreducibilityVerdict irreducible(IrreducibilityMethod method) {
  return {Irreducibility::Irreducible, std::nullopt, method};
}

}  // namespace

Subspace spin(std::span<const FieldElement> v, std::span<const Matrix> generators) {
  require_same_size(generators);
  const FieldSpec spec = generators.front().spec();
  const std::size_t n = generators.front().rows();
  if (v.size() != n) throw Error(ErrorCode::SizeMismatch, "seed vector length");
  if (is_zero(v)) throw Error(ErrorCode::ZeroVector, "cannot spin the zero vector");
  EchelonBuilder builder(spec, n);
  std::deque<Vector> pending{Vector(v.begin(), v.end())};
  builder.insert(pending.front());
  while (!pending.empty() && builder.dim() < n) {
    Vector w = std::move(pending.front());
    pending.pop_front();
    for (const auto& g : generators) {
      Vector image = g.apply(w);
      if (builder.insert(image)) pending.push_back(std::move(image));
    }
  }
  return builder.dim() == n ? Subspace::full(spec, n) : builder.to_subspace();
}

AlgebraClosure algebra_closure(std::span<const Matrix> generators) {
  require_same_size(generators);
  const FieldSpec spec = generators.front().spec();
  const std::size_t n = generators.front().rows();
  EchelonBuilder builder(spec, n * n);
  AlgebraClosure out;
  std::deque<Matrix> pending;
  auto offer = [&](Matrix m) {
    if (builder.insert(flatten(m))) {
      out.basis.push_back(m);
      pending.push_back(std::move(m));
    }
  };
  offer(Matrix::identity(spec, n));
  // Words in the generators arise by left multiplication starting from I.
  while (!pending.empty() && builder.dim() < n * n) {
    Matrix w = std::move(pending.front());
    pending.pop_front();
    for (const auto& g : generators) offer(g * w);
  }
  out.dimension = builder.dim();
  return out;
}

bool verify_invariant(const Subspace& w, const Matrix& a, const Matrix& astar) {
  if (a.cols() != w.ambient_dim() || astar.cols() != w.ambient_dim()) {
    throw Error(ErrorCode::AmbientMismatch, "subspace and transformations act on different spaces");
  }
  return subspace_contains(w, apply(a, w)) && subspace_contains(w, apply(astar, w));
}

std::optional<IrreducibilityVerdict> decide_irreducible_exhaustive(const Matrix& a, const Matrix& astar,
                                                                  std::uint64_t budget) {
  const std::vector<Matrix> gens{a, astar};
  require_same_size(gens);
  const FieldSpec spec = a.spec();
  const std::size_t n = a.rows();
  if (!spec.is_prime_field() || projective_points(spec.p(), n, budget) > budget) return std::nullopt;
  // Every invariant subspace contains the spin of each of its vectors.
  std::optional<Subspace> witness;
  for_each_projective_point(Subspace::full(spec, n), [&](const Vector& v) {
    Subspace s = spin(v, gens);
    if (s.is_full()) return false;
    witness = std::move(s);
    return true;
  });
  if (witness) return reducible(std::move(*witness), IrreducibilityMethod::BruteForce);
  return irreducible(IrreducibilityMethod::BruteForce);
}

IrreducibilityVerdict decide_irreducible(const Matrix& a, const Matrix& astar,
                                         const IrreducibilityOptions& options) {
  const std::vector<Matrix> gens{a, astar};
  require_same_size(gens);
  const FieldSpec spec = a.spec();
  const std::size_t n = a.rows();
  if (n == 0) throw Error(ErrorCode::SizeMismatch, "empty space");

  // (1) Burnside: the generated algebra is all of M_n(K).
  const AlgebraClosure closure = algebra_closure(gens);
  if (closure.dimension == n * n) return irreducible(IrreducibilityMethod::AlgebraDimension);

  // (2) Spin probes from the standard basis and from eigenvectors.
  std::vector<Vector> probes;
  for (std::size_t i = 0; i < n; ++i) probes.push_back(unit_vector(spec, n, i));
  bool multiplicity_free_eigenbasis = false;
  std::vector<EigenStructure> diagonalizable;
  for (const auto& m : gens) {
    try {
      EigenStructure es = eigen_structure(m);
      bool all_lines = es.diagonalizable;
      for (const auto& space : es.eigenspaces) {
        all_lines = all_lines && space.dim() == 1;
        for (auto& v : space.vectors()) probes.push_back(std::move(v));
      }
      multiplicity_free_eigenbasis = multiplicity_free_eigenbasis || all_lines;
      if (es.diagonalizable) diagonalizable.push_back(std::move(es));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EigenvaluesOutsideField) throw;
    }
  }
  for (const auto& v : probes) {
    Subspace s = spin(v, gens);
    if (!s.is_full()) return reducible(std::move(s), IrreducibilityMethod::SpinProbe);
  }
  // An invariant subspace of a diagonalizable map contains one of its
  // eigenvectors; with one-dimensional eigenspaces those were all probed.
  if (multiplicity_free_eigenbasis) return irreducible(IrreducibilityMethod::SpinProbe);

  std::mt19937_64 rng(options.seed);
  if (auto witness = commutant_witness(gens, diagonalizable, rng)) return reducible(std::move(*witness), IrreducibilityMethod::Commutant);
  const std::vector<Matrix> transposed{a.transpose(), astar.transpose()};
  for (const auto& es : diagonalizable) {
    for (std::size_t i = 0; i < es.eigenspaces.size(); ++i) {
      NortonOutcome outcome = corner_norton(es, i, closure, gens, transposed);
      if (outcome.decided) return std::move(outcome.verdict);
    }
  }

  if (!spec.is_prime_field()) return {Irreducibility::Undetermined, std::nullopt, IrreducibilityMethod::SpinProbe};

  // (3) Exhaustive spinning of projective points.
  if (auto verdict = decide_irreducible_exhaustive(a, astar, options.brute_force_budget)) return std::move(*verdict);

  // (4) Norton's test: for an algebra element M, if every nonzero vector of
  // ker M spins to V and some nonzero vector of ker M^T spins to V under the
  // transposed generators, the pair is irreducible.
  for (unsigned draw = 0; draw < options.meataxe_draws; ++draw) {
    Matrix m(spec, n, n);
    for (const auto& b : closure.basis) m += FieldElement(spec, static_cast<long>(rng() % spec.p())) * b;
    Subspace null = kernel(m);
    if (null.is_zero()) continue;
    if (projective_points(spec.p(), null.dim(), options.brute_force_budget) > options.brute_force_budget) {
      continue;
    }
    std::optional<Subspace> witness;
    for_each_projective_point(null, [&](const Vector& v) {
      Subspace s = spin(v, gens);
      if (s.is_full()) return false;
      witness = std::move(s);
      return true;
    });
    if (witness) return reducible(std::move(*witness), IrreducibilityMethod::MeatAxe);
    Subspace dual_null = kernel(m.transpose());
    Subspace dual = spin(dual_null.basis().row(0), transposed);
    if (!dual.is_full()) return reducible(annihilator(dual), IrreducibilityMethod::MeatAxe);
    return irreducible(IrreducibilityMethod::MeatAxe);
  }
  return {Irreducibility::Undetermined, std::nullopt, IrreducibilityMethod::MeatAxe};
}

}  // namespace hesspair
