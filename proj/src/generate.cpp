#include "hesspair/generate.hpp"

#include <algorithm>
#include <random>

namespace hesspair {

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::SplitForm: return "split-form";
    case InstanceKind::TridiagonalForm: return "tridiagonal-form";
    case InstanceKind::ReducibleSum: return "reducible-sum";
    case InstanceKind::Conjugated: return "conjugated";
  }
  return "split-form";
}

namespace {

// mt19937_64 output is fixed by the standard; distributions are not, so
// sampling reduces raw output directly.
FieldElement sample(FieldSpec spec, std::mt19937_64& rng, bool nonzero) {
  for (;;) {
    FieldElement x(spec);
    if (spec.is_prime_field()) {
      x = FieldElement(spec, static_cast<long>(rng() % spec.p()));
    } else {
      const long num = static_cast<long>(rng() % 13) - 6;
      const long den = static_cast<long>(rng() % 3) + 1;
      x = FieldElement(spec, mpq_class(num, den));
    }
    if (!nonzero || !x.is_zero()) return x;
  }
}

FieldElement off_diagonal_entry(FieldSpec spec, OffDiagonal mode, std::mt19937_64& rng) {
  switch (mode) {
    case OffDiagonal::Ones: return FieldElement::one(spec);
    case OffDiagonal::Nonzero: return sample(spec, rng, true);
    case OffDiagonal::Sparse: return rng() % 2 ? sample(spec, rng, true) : FieldElement::zero(spec);
  }
  return FieldElement::one(spec);
}

void require_distinct(const std::vector<FieldElement>& seq, std::string_view name) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) {
        throw Error(ErrorCode::DuplicateEigenvalue, std::string(name) + " repeats " + seq[i].to_string());
      }
    }
  }
}

void validate(FieldSpec spec, const SplitFormParams& params) {
  if (params.dims.empty()) throw Error(ErrorCode::EmptyDims, "no blocks");
  for (std::size_t k : params.dims) {
    if (k == 0) throw Error(ErrorCode::EmptyDims, "block dimensions must be positive");
  }
  if (params.theta.size() != params.dims.size() || params.theta_star.size() != params.dims.size()) {
    throw Error(ErrorCode::LengthMismatch, "dims, theta and theta_star must have equal length");
  }
  for (const auto* seq : {&params.theta, &params.theta_star}) {
    for (const auto& x : *seq) {
      if (x.spec() != spec) throw Error(ErrorCode::MixedFields, "eigenvalue from a different field");
    }
  }
  require_distinct(params.theta, "theta");
  require_distinct(params.theta_star, "theta_star");
}

std::vector<std::size_t> offsets_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> out{0};
  for (std::size_t k : dims) out.push_back(out.back() + k);
  return out;
}

Subspace coordinate_block(FieldSpec spec, std::size_t n, std::size_t begin, std::size_t end) {
  std::vector<Vector> basis;
  for (std::size_t c = begin; c < end; ++c) basis.push_back(unit_vector(spec, n, c));
  return Subspace::span(spec, n, basis);
}

GeneratedInstance build_split_form(FieldSpec spec, const SplitFormParams& params, std::mt19937_64& rng) {
  const std::size_t d = params.dims.size() - 1;
  const auto offsets = offsets_of(params.dims);
  const std::size_t n = offsets.back();
  Matrix a(spec, n, n);
  Matrix astar(spec, n, n);
  for (std::size_t i = 0; i <= d; ++i) {
    for (std::size_t r = offsets[i]; r < offsets[i + 1]; ++r) {
      a(r, r) = params.theta[d - i];
      astar(r, r) = params.theta_star[i];
    }
    if (i == d) continue;
    // A maps U_i into U_{i+1}; A* maps U_{i+1} into U_i.
    for (std::size_t r = offsets[i + 1]; r < offsets[i + 2]; ++r) {
      for (std::size_t c = offsets[i]; c < offsets[i + 1]; ++c) a(r, c) = off_diagonal_entry(spec, params.off_diagonal, rng);
    }
    for (std::size_t r = offsets[i]; r < offsets[i + 1]; ++r) {
      for (std::size_t c = offsets[i + 1]; c < offsets[i + 2]; ++c) {
        astar(r, c) = off_diagonal_entry(spec, params.off_diagonal, rng);
      }
    }
  }
  GeneratedInstance out{std::move(a), std::move(astar), {}};
  out.truth.kind = InstanceKind::SplitForm;
  out.truth.dims = params.dims;
  out.truth.split.theta = params.theta;
  out.truth.split.theta_star = params.theta_star;
  for (std::size_t i = 0; i <= d; ++i) {
    out.truth.split.subspaces.push_back(coordinate_block(spec, n, offsets[i], offsets[i + 1]));
  }
  return out;
}

// With one-dimensional blocks: A lower bidiagonal with subdiagonal 1, A*
// upper bidiagonal with superdiagonal
//   φ_i = φ_1 Σ_{h<i} (t_h - t_{d-h})/(t_0 - t_d) + (θ*_i - θ*_0)(t_{i-1} - t_d),
// where t_h = θ_{d-h}. Returns nullopt when some φ_i vanishes.
std::optional<GeneratedInstance> leonard_candidate(FieldSpec spec, const SplitFormParams& params, std::mt19937_64& rng) {
  const std::size_t d = params.dims.size() - 1;
  const auto t = [&](std::size_t h) { return params.theta[d - h]; };
  SplitFormParams ones = params;
  ones.off_diagonal = OffDiagonal::Ones;
  GeneratedInstance out = build_split_form(spec, ones, rng);
  const FieldElement phi1 = sample(spec, rng, true);
  FieldElement partial = FieldElement::zero(spec);
  for (std::size_t i = 1; i <= d; ++i) {
    partial += (t(i - 1) - t(d - i + 1)) / (t(0) - t(d));
    const FieldElement phi = phi1 * partial + (params.theta_star[i] - params.theta_star[0]) * (t(i - 1) - t(d));
    if (phi.is_zero()) return std::nullopt;
    out.astar(i - 1, i) = phi;
  }
  return out;
}

bool certified_tridiagonal(const GeneratedInstance& inst) {
  const auto eigen_a = eigen_structure(inst.a);
  const auto eigen_astar = eigen_structure(inst.astar);
  const auto ord_a = OrderedEigenData::from_eigenvalues(eigen_a, inst.truth.split.theta);
  const auto ord_astar = OrderedEigenData::from_eigenvalues(eigen_astar, inst.truth.split.theta_star);
  // Cheap necessary condition first.
  if (!satisfies_tridiagonal_side(inst.astar, ord_a) || !satisfies_tridiagonal_side(inst.a, ord_astar)) return false;
  const auto irreducibility = decide_irreducible(inst.a, inst.astar).status;
  if (irreducibility != Irreducibility::Irreducible) return false;
  const auto verdict = is_tridiagonal_pair(eigen_a, eigen_astar, irreducibility);
  const OrderingPair generating{ord_a.order(), ord_astar.order()};
  return verdict.status == Tridiagonality::Tridiagonal &&
         std::find(verdict.orderings.begin(), verdict.orderings.end(), generating) != verdict.orderings.end();
}

}  // namespace

GeneratedInstance gen_split_form(FieldSpec spec, const SplitFormParams& params, std::uint64_t seed) {
  validate(spec, params);
  std::mt19937_64 rng(seed);
  GeneratedInstance out = build_split_form(spec, params, rng);
  out.truth.seed = seed;
  return out;
}

GeneratedInstance gen_tridiagonal_form(FieldSpec spec, const SplitFormParams& params, std::uint64_t seed,
                                       const TridiagonalGenOptions& options) {
  validate(spec, params);
  std::mt19937_64 rng(seed);
  const bool lines = std::all_of(params.dims.begin(), params.dims.end(), [](std::size_t k) { return k == 1; });
  for (unsigned attempt = 0; attempt < options.max_attempts; ++attempt) {
    std::optional<GeneratedInstance> leonard;
    if (lines && params.dims.size() > 1 && attempt % 2 == 0) {
      leonard = leonard_candidate(spec, params, rng);
      if (!leonard) continue;
    }
    GeneratedInstance candidate = leonard ? std::move(*leonard) : build_split_form(spec, params, rng);
    if (!certified_tridiagonal(candidate)) continue;
    candidate.truth.kind = InstanceKind::TridiagonalForm;
    candidate.truth.seed = seed;
    return candidate;
  }
  throw Error(ErrorCode::GenerationBudgetExceeded,
              "no tridiagonal instance within " + std::to_string(options.max_attempts) + " attempts");
}

GeneratedInstance gen_reducible(FieldSpec spec, std::span<const SplitFormParams> blocks, std::uint64_t seed) {
  if (blocks.size() < 2) throw Error(ErrorCode::InvalidArgument, "a reducible sum needs at least two blocks");
  for (const auto& b : blocks) {
    validate(spec, b);
    if (b.theta != blocks.front().theta || b.theta_star != blocks.front().theta_star) {
      throw Error(ErrorCode::InvalidArgument, "blocks must share theta and theta_star");
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<GeneratedInstance> parts;
  std::size_t n = 0;
  for (const auto& b : blocks) {
    parts.push_back(build_split_form(spec, b, rng));
    n += parts.back().a.rows();
  }
  const std::size_t d = blocks.front().dims.size() - 1;
  GeneratedInstance out{Matrix(spec, n, n), Matrix(spec, n, n), {}};
  out.truth.kind = InstanceKind::ReducibleSum;
  out.truth.seed = seed;
  out.truth.split.theta = blocks.front().theta;
  out.truth.split.theta_star = blocks.front().theta_star;
  out.truth.dims.assign(d + 1, 0);
  std::vector<std::vector<Vector>> flag(d + 1);
  std::size_t offset = 0;
  for (const auto& part : parts) {
    const std::size_t k = part.a.rows();
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) {
        out.a(offset + r, offset + c) = part.a(r, c);
        out.astar(offset + r, offset + c) = part.astar(r, c);
      }
    }
    for (std::size_t i = 0; i <= d; ++i) {
      out.truth.dims[i] += part.truth.dims[i];
      for (const auto& v : part.truth.split.subspaces[i].vectors()) {
        Vector w = zero_vector(spec, n);
        std::copy(v.begin(), v.end(), w.begin() + static_cast<std::ptrdiff_t>(offset));
        flag[i].push_back(std::move(w));
      }
    }
    offset += k;
  }
  for (auto& vs : flag) out.truth.split.subspaces.push_back(Subspace::span(spec, n, vs));
  out.truth.invariant_subspace = coordinate_block(spec, n, 0, parts.front().a.rows());
  return out;
}

GeneratedInstance conjugate_by(const GeneratedInstance& instance, const Matrix& p) {
  if (!p.is_square() || p.rows() != instance.a.rows() || p.spec() != instance.a.spec()) {
    throw Error(ErrorCode::SizeMismatch, "conjugator has the wrong shape");
  }
  if (rank(p) != p.rows()) throw Error(ErrorCode::SingularConjugator, "conjugator is singular");
  const Matrix p_inv = inverse(p);
  GeneratedInstance out = instance;
  out.a = p * instance.a * p_inv;
  out.astar = p * instance.astar * p_inv;
  for (auto& u : out.truth.split.subspaces) u = apply(p, u);
  if (out.truth.invariant_subspace) out.truth.invariant_subspace = apply(p, *out.truth.invariant_subspace);
  out.truth.conjugator = instance.truth.conjugator ? p * *instance.truth.conjugator : p;
  out.truth.kind = InstanceKind::Conjugated;
  return out;
}

GeneratedInstance conjugate(const GeneratedInstance& instance, std::uint64_t seed) {
  const FieldSpec spec = instance.a.spec();
  const std::size_t n = instance.a.rows();
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 256; ++attempt) {
    Matrix p(spec, n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) p(r, c) = sample(spec, rng, false);
    }
    if (rank(p) == n) return conjugate_by(instance, p);
  }
  throw Error(ErrorCode::SingularConjugator, "no invertible conjugator within 256 draws");
}

}  // namespace hesspair
