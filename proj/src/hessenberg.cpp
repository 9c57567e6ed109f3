#include "hesspair/hessenberg.hpp"

#include <algorithm>
#include <numeric>

namespace hesspair {

Ordering identity_ordering(std::size_t size) {
  Ordering o(size);
  std::iota(o.begin(), o.end(), std::size_t{0});
  return o;
}

Ordering reversed(Ordering order) {
  std::reverse(order.begin(), order.end());
  return order;
}

namespace {

void require_diagonalizable(const EigenStructure& eigen) {
  if (!eigen.diagonalizable) {
    throw Error(ErrorCode::NotDiagonalizable, "transformation is not diagonalizable over the field");
  }
}

bool is_permutation_of_size(const Ordering& order, std::size_t size) {
  if (order.size() != size) return false;
  std::vector<bool> seen(size, false);
  for (std::size_t x : order) {
    if (x >= size || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

std::uint64_t factorial_capped(std::size_t k, std::uint64_t cap) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= k; ++i) {
    f *= i;
    if (f > cap) return cap + 1;
  }
  return f;
}

void require_within_budget(const EigenStructure& eigen, const SearchOptions& options) {
  const std::size_t count = eigen.eigenvalues.size();
  if (factorial_capped(count, options.max_orderings) > options.max_orderings) {
    throw Error(ErrorCode::SearchBudgetExceeded,
                std::to_string(count) + "! orderings exceed the limit of " + std::to_string(options.max_orderings));
  }
}

void require_square_pair(const Matrix& a, const Matrix& astar) {
  if (!a.is_square() || !astar.is_square()) throw Error(ErrorCode::NotSquare, "transformations must be square");
  if (a.rows() != astar.rows() || a.spec() != astar.spec()) {
    throw Error(ErrorCode::SizeMismatch, "A and A* must act on the same space over the same field");
  }
}

// Images other·V_k of every eigenspace, indexed like eigen.eigenspaces.
std::vector<Subspace> images(const Matrix& other, const EigenStructure& eigen) {
  std::vector<Subspace> out;
  out.reserve(eigen.eigenspaces.size());
  for (const auto& space : eigen.eigenspaces) out.push_back(apply(other, space));
  return out;
}

// Condition at position i needs the prefix through i + 1, so a prefix of
// length k settles every i <= k - 2.
void search(const std::vector<Subspace>& image, const EigenStructure& eigen, Ordering& prefix,
            std::vector<bool>& used, std::vector<Subspace>& flags, std::vector<Ordering>& out) {
  const std::size_t total = eigen.eigenspaces.size();
  if (prefix.size() == total) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t next = 0; next < total; ++next) {
    if (used[next]) continue;
    Subspace flag = subspace_sum(flags.back(), eigen.eigenspaces[next]);
    if (!prefix.empty() && !subspace_contains(flag, image[prefix.back()])) continue;
    used[next] = true;
    prefix.push_back(next);
    flags.push_back(std::move(flag));
    search(image, eigen, prefix, used, flags, out);
    flags.pop_back();
    prefix.pop_back();
    used[next] = false;
  }
}

std::vector<Ordering> three_term_orderings(const Matrix& other, const EigenStructure& eigen) {
  std::vector<Ordering> out;
  Ordering order = identity_ordering(eigen.eigenvalues.size());
  do {
    if (satisfies_tridiagonal_side(other, OrderedEigenData(eigen, order))) out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

std::vector<OrderingPair> product(const std::vector<Ordering>& left, const std::vector<Ordering>& right) {
  std::vector<OrderingPair> out;
  out.reserve(left.size() * right.size());
  for (const auto& l : left) {
    for (const auto& r : right) out.push_back({l, r});
  }
  return out;
}

}  // namespace

OrderedEigenData::OrderedEigenData(EigenStructure eigen, Ordering order)
    : eigen_(std::move(eigen)), order_(std::move(order)) {
  require_diagonalizable(eigen_);
  if (!is_permutation_of_size(order_, eigen_.eigenvalues.size())) {
    throw Error(ErrorCode::InvalidArgument, "ordering is not a permutation of the eigenspaces");
  }
  const FieldSpec spec = eigen_.transform.spec();
  flag_.reserve(order_.size() + 1);
  flag_.push_back(Subspace::zero(spec, n()));
  for (std::size_t i = 0; i < order_.size(); ++i) flag_.push_back(subspace_sum(flag_.back(), space(i)));
}

OrderedEigenData OrderedEigenData::from_eigenvalues(EigenStructure eigen, std::span<const FieldElement> thetas) {
  Ordering order;
  order.reserve(thetas.size());
  for (const auto& t : thetas) {
    auto it = std::find(eigen.eigenvalues.begin(), eigen.eigenvalues.end(), t);
    if (it == eigen.eigenvalues.end()) {
      throw Error(ErrorCode::InvalidArgument, t.to_string() + " is not an eigenvalue");
    }
    order.push_back(static_cast<std::size_t>(it - eigen.eigenvalues.begin()));
  }
  return OrderedEigenData(std::move(eigen), std::move(order));
}

std::vector<FieldElement> OrderedEigenData::thetas() const {
  std::vector<FieldElement> out;
  out.reserve(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) out.push_back(theta(i));
  return out;
}

const Subspace& OrderedEigenData::flag(long i) const {
  if (i < 0) return flag_.front();
  const auto k = static_cast<std::size_t>(i) + 1;
  return k >= flag_.size() ? flag_.back() : flag_[k];
}

Subspace OrderedEigenData::coflag(long i) const {
  const FieldSpec spec = eigen_.transform.spec();
  if (i <= 0) return Subspace::full(spec, n());
  Subspace out = Subspace::zero(spec, n());
  for (auto k = static_cast<std::size_t>(i); k < order_.size(); ++k) out = subspace_sum(out, space(k));
  return out;
}

OrderedEigenData OrderedEigenData::reversed() const { return OrderedEigenData(eigen_, hesspair::reversed(order_)); }

bool satisfies_hessenberg_side(const Matrix& other, const OrderedEigenData& ord) {
  for (std::size_t i = 0; i < ord.order().size(); ++i) {
    if (!subspace_contains(ord.flag(static_cast<long>(i) + 1), apply(other, ord.space(i)))) return false;
  }
  return true;
}

bool satisfies_tridiagonal_side(const Matrix& other, const OrderedEigenData& ord) {
  const std::size_t count = ord.order().size();
  for (std::size_t i = 0; i < count; ++i) {
    Subspace band = ord.space(i);
    if (i > 0) band = subspace_sum(band, ord.space(i - 1));
    if (i + 1 < count) band = subspace_sum(band, ord.space(i + 1));
    if (!subspace_contains(band, apply(other, ord.space(i)))) return false;
  }
  return true;
}

bool is_hessenberg_wrt(const Matrix& a, const Matrix& astar, const OrderedEigenData& ord_a,
                       const OrderedEigenData& ord_astar) {
  require_square_pair(a, astar);
  if (ord_a.transform() != a || ord_astar.transform() != astar) {
    throw Error(ErrorCode::InvalidArgument, "ordered eigen data does not belong to the given transformations");
  }
  return satisfies_hessenberg_side(astar, ord_a) && satisfies_hessenberg_side(a, ord_astar);
}

std::vector<Ordering> hessenberg_orderings_side(const Matrix& other, const EigenStructure& eigen,
                                                const SearchOptions& options) {
  require_diagonalizable(eigen);
  require_within_budget(eigen, options);
  const auto image = images(other, eigen);
  Ordering prefix;
  std::vector<bool> used(eigen.eigenspaces.size(), false);
  std::vector<Subspace> flags{Subspace::zero(other.spec(), other.rows())};
  std::vector<Ordering> out;
  search(image, eigen, prefix, used, flags, out);
  return out;  // lexicographic by construction
}

std::vector<Ordering> hessenberg_orderings_side_brute_force(const Matrix& other, const EigenStructure& eigen,
                                                            const SearchOptions& options) {
  require_diagonalizable(eigen);
  require_within_budget(eigen, options);
  std::vector<Ordering> out;
  Ordering order = identity_ordering(eigen.eigenvalues.size());
  do {
    if (satisfies_hessenberg_side(other, OrderedEigenData(eigen, order))) out.push_back(order);
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

std::vector<OrderingPair> find_hessenberg_orderings(const EigenStructure& eigen_a,
                                                    const EigenStructure& eigen_astar,
                                                    const SearchOptions& options) {
  require_square_pair(eigen_a.transform, eigen_astar.transform);
  auto left = hessenberg_orderings_side(eigen_astar.transform, eigen_a, options);
  auto right = hessenberg_orderings_side(eigen_a.transform, eigen_astar, options);
  return product(left, right);
}

std::vector<OrderingPair> find_hessenberg_orderings(const Matrix& a, const Matrix& astar,
                                                    const SearchOptions& options) {
  require_square_pair(a, astar);
  return find_hessenberg_orderings(eigen_structure(a), eigen_structure(astar), options);
}

std::vector<OrderingPair> find_hessenberg_orderings_brute_force(const EigenStructure& eigen_a,
                                                                const EigenStructure& eigen_astar,
                                                                const SearchOptions& options) {
  require_square_pair(eigen_a.transform, eigen_astar.transform);
  auto left = hessenberg_orderings_side_brute_force(eigen_astar.transform, eigen_a, options);
  auto right = hessenberg_orderings_side_brute_force(eigen_a.transform, eigen_astar, options);
  return product(left, right);
}

VijLattice::VijLattice(const OrderedEigenData& ord_a, const OrderedEigenData& ord_astar)
    : d_(ord_a.d()), delta_(ord_astar.d()) {
  require_square_pair(ord_a.transform(), ord_astar.transform());
  cells_.reserve((d_ + 3) * (delta_ + 3));
  for (long i = -1; i <= static_cast<long>(d_) + 1; ++i) {
    for (long j = -1; j <= static_cast<long>(delta_) + 1; ++j) {
      cells_.push_back(subspace_intersect(ord_a.flag(i), ord_astar.flag(j)));
    }
  }
}

const Subspace& VijLattice::cell(long i, long j) const {
  if (i < -1 || j < -1 || i > static_cast<long>(d_) + 1 || j > static_cast<long>(delta_) + 1) {
    throw Error(ErrorCode::IndexOutOfRange,
                "cell (" + std::to_string(i) + ", " + std::to_string(j) + ") is outside the lattice");
  }
  const auto row = static_cast<std::size_t>(i + 1);
  const auto col = static_cast<std::size_t>(j + 1);
  return cells_[row * (delta_ + 3) + col];
}

VijLattice build_vij_lattice(const OrderedEigenData& ord_a, const OrderedEigenData& ord_astar) {
  return VijLattice(ord_a, ord_astar);
}

Subspace wr_witness(const VijLattice& lattice, std::size_t r) {
  if (r > std::min(lattice.d(), lattice.delta())) {
    throw Error(ErrorCode::IndexOutOfRange, "r = " + std::to_string(r) + " exceeds min(d, delta)");
  }
  const Subspace& corner = lattice.cell(0, 0);
  Subspace out = Subspace::zero(corner.spec(), corner.ambient_dim());
  for (std::size_t i = 0; i <= r; ++i) {
    out = subspace_sum(out, lattice.cell(static_cast<long>(i), static_cast<long>(r - i)));
  }
  return out;
}

SplitDecomposition split_from_formula(const OrderedEigenData& ord_a, const OrderedEigenData& ord_astar) {
  require_square_pair(ord_a.transform(), ord_astar.transform());
  if (ord_a.d() != ord_astar.d()) {
    throw Error(ErrorCode::DDeltaMismatch, "d = " + std::to_string(ord_a.d()) +
                                               " but delta = " + std::to_string(ord_astar.d()));
  }
  const std::size_t d = ord_a.d();
  SplitDecomposition out{{}, ord_a.thetas(), ord_astar.thetas()};
  for (std::size_t i = 0; i <= d; ++i) {
    out.subspaces.push_back(
        subspace_intersect(ord_astar.flag(static_cast<long>(i)), ord_a.flag(static_cast<long>(d - i))));
  }
  return out;
}

SplitDecomposition construct_split_from_hessenberg(const Matrix& a, const Matrix& astar,
                                                   const OrderedEigenData& ord_a,
                                                   const OrderedEigenData& ord_astar,
                                                   Irreducibility irreducibility) {
  if (!is_hessenberg_wrt(a, astar, ord_a, ord_astar)) {
    throw Error(ErrorCode::NotHessenberg, "the pair is not Hessenberg with respect to the given orderings");
  }
  if (irreducibility == Irreducibility::Reducible) {
    throw Error(ErrorCode::NotIrreducible, "the pair has a common invariant subspace");
  }
  if (irreducibility == Irreducibility::Undetermined) {
    throw Error(ErrorCode::IrreducibilityUndetermined, "irreducibility could not be decided");
  }
  if (ord_a.d() != ord_astar.d()) {
    throw Error(ErrorCode::DDeltaMismatch, "d = " + std::to_string(ord_a.d()) +
                                               " but delta = " + std::to_string(ord_astar.d()));
  }
  const std::size_t d = ord_a.d();
  const VijLattice lattice(ord_a, ord_astar);
  SplitDecomposition out{{}, ord_a.thetas(), ord_astar.thetas()};
  for (std::size_t i = 0; i <= d; ++i) {
    out.subspaces.push_back(lattice.cell(static_cast<long>(d - i), static_cast<long>(i)));
  }
  SplitCheck check = check_split(a, astar, out);
  if (!check.valid) throw Error(ErrorCode::VerificationFailed, "constructed split fails: " + check.violation);
  return out;
}

SplitCheck check_split(const Matrix& a, const Matrix& astar, const SplitDecomposition& candidate) {
  require_square_pair(a, astar);
  const std::size_t n = a.rows();
  const auto& parts = candidate.subspaces;
  if (parts.empty() || candidate.theta.size() != parts.size() || candidate.theta_star.size() != parts.size()) {
    throw Error(ErrorCode::ShapeMismatch, "subspace, theta and theta* lists must be nonempty and equally long");
  }
  for (const auto& u : parts) {
    if (u.ambient_dim() != n || u.spec() != a.spec()) {
      throw Error(ErrorCode::ShapeMismatch, "subspace does not live in the space of A");
    }
  }
  for (const auto* seq : {&candidate.theta, &candidate.theta_star}) {
    for (const auto& x : *seq) {
      if (x.spec() != a.spec()) throw Error(ErrorCode::ShapeMismatch, "eigenvalue from a different field");
    }
  }
  const std::size_t d = parts.size() - 1;
  for (std::size_t i = 0; i <= d; ++i) {
    if (parts[i].is_zero()) return {false, "U_" + std::to_string(i) + " is zero"};
  }
  if (!is_decomposition(parts, n)) return {false, "subspaces do not form a direct sum equal to V"};
  for (const auto* seq : {&candidate.theta, &candidate.theta_star}) {
    for (std::size_t i = 0; i <= d; ++i) {
      for (std::size_t j = i + 1; j <= d; ++j) {
        if ((*seq)[i] == (*seq)[j]) return {false, "eigenvalue sequence repeats " + (*seq)[i].to_string()};
      }
    }
  }
  const Subspace zero = Subspace::zero(a.spec(), n);
  for (std::size_t i = 0; i <= d; ++i) {
    const Subspace& up = i < d ? parts[i + 1] : zero;
    if (!subspace_contains(up, apply(shifted(a, candidate.theta[d - i]), parts[i]))) {
      return {false, "(A - theta_" + std::to_string(d - i) + " I) U_" + std::to_string(i) + " is not inside U_" +
                         std::to_string(i + 1)};
    }
    const Subspace& down = i > 0 ? parts[i - 1] : zero;
    if (!subspace_contains(down, apply(shifted(astar, candidate.theta_star[i]), parts[i]))) {
      return {false, "(A* - theta*_" + std::to_string(i) + " I) U_" + std::to_string(i) + " is not inside U_" +
                         (i > 0 ? std::to_string(i - 1) : std::string("-1"))};
    }
  }
  return {true, {}};
}

bool verify_split(const Matrix& a, const Matrix& astar, const SplitDecomposition& candidate) {
  return check_split(a, astar, candidate).valid;
}

bool split_flags_match(const SplitDecomposition& split, const OrderedEigenData& ord_a,
                       const OrderedEigenData& ord_astar) {
  const std::size_t d = split.d();
  if (ord_a.d() != d || ord_astar.d() != d) return false;
  const auto& parts = split.subspaces;
  const Subspace& first = parts.front();
  const std::size_t n = first.ambient_dim();
  Subspace lower = Subspace::zero(first.spec(), n);  // U_0 + ... + U_i
  Subspace upper = Subspace::zero(first.spec(), n);  // U_{d-i} + ... + U_d
  for (std::size_t i = 0; i <= d; ++i) {
    lower = subspace_sum(lower, parts[i]);
    upper = subspace_sum(upper, parts[d - i]);
    if (lower != ord_astar.flag(static_cast<long>(i))) return false;
    // U_{d-i} + ... + U_d = V_0 + ... + V_i.
    if (upper != ord_a.flag(static_cast<long>(i))) return false;
  }
  return true;
}

bool recover_hessenberg_from_split(const Matrix& a, const Matrix& astar, const SplitDecomposition& split) {
  SplitCheck check = check_split(a, astar, split);
  if (!check.valid) throw Error(ErrorCode::SplitInvalid, check.violation);
  const auto ord_a = OrderedEigenData::from_eigenvalues(eigen_structure(a), split.theta);
  const auto ord_astar = OrderedEigenData::from_eigenvalues(eigen_structure(astar), split.theta_star);
  return split_flags_match(split, ord_a, ord_astar) && is_hessenberg_wrt(a, astar, ord_a, ord_astar);
}

std::vector<std::size_t> DimensionProfile::mismatches() const {
  std::vector<std::size_t> out;
  const std::size_t count = std::max({eigen_a.size(), eigen_astar.size(), split.size()});
  for (std::size_t i = 0; i < count; ++i) {
    if (i >= eigen_a.size() || i >= eigen_astar.size() || i >= split.size() || eigen_a[i] != split[i] ||
        eigen_astar[i] != split[i]) {
      out.push_back(i);
    }
  }
  return out;
}

DimensionProfile dimension_profile(const SplitDecomposition& split, const OrderedEigenData& ord_a,
                                   const OrderedEigenData& ord_astar) {
  SplitCheck check = check_split(ord_a.transform(), ord_astar.transform(), split);
  if (!check.valid) throw Error(ErrorCode::SplitInvalid, check.violation);
  if (ord_a.thetas() != split.theta || ord_astar.thetas() != split.theta_star) {
    throw Error(ErrorCode::ShapeMismatch, "orderings do not match the eigenvalue sequences of the split");
  }
  const std::size_t d = split.d();
  DimensionProfile out;
  for (std::size_t i = 0; i <= d; ++i) {
    out.eigen_a.push_back(ord_a.space(d - i).dim());
    out.eigen_astar.push_back(ord_astar.space(i).dim());
    out.split.push_back(split.subspaces[i].dim());
  }
  return out;
}

std::string_view to_string(Tridiagonality t) {
  switch (t) {
    case Tridiagonality::Tridiagonal: return "Tridiagonal";
    case Tridiagonality::NotTridiagonal: return "NotTridiagonal";
    case Tridiagonality::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

TridiagonalVerdict is_tridiagonal_pair(const EigenStructure& eigen_a, const EigenStructure& eigen_astar,
                                       Irreducibility irreducibility, const SearchOptions& options) {
  require_square_pair(eigen_a.transform, eigen_astar.transform);
  const Matrix& a = eigen_a.transform;
  const Matrix& astar = eigen_astar.transform;
  auto two_sided = [](const std::vector<Ordering>& hessenberg) {
    std::vector<Ordering> out;
    for (const auto& o : hessenberg) {
      if (std::binary_search(hessenberg.begin(), hessenberg.end(), reversed(o))) out.push_back(o);
    }
    return out;
  };
  const auto left = two_sided(hessenberg_orderings_side(astar, eigen_a, options));
  const auto right = two_sided(hessenberg_orderings_side(a, eigen_astar, options));
  if (left != three_term_orderings(astar, eigen_a) || right != three_term_orderings(a, eigen_astar)) {
    throw Error(ErrorCode::OracleDisagreement,
                "reversed-Hessenberg orderings differ from the direct three-term inclusions");
  }
  TridiagonalVerdict out;
  out.orderings = product(left, right);
  if (out.orderings.empty() || irreducibility == Irreducibility::Reducible) {
    out.status = Tridiagonality::NotTridiagonal;
  } else if (irreducibility == Irreducibility::Undetermined) {
    out.status = Tridiagonality::Undetermined;
  } else {
    out.status = Tridiagonality::Tridiagonal;
  }
  return out;
}

TridiagonalVerdict is_tridiagonal_pair(const Matrix& a, const Matrix& astar, const SearchOptions& options,
                                       const IrreducibilityOptions& irreducibility_options) {
  require_square_pair(a, astar);
  const auto eigen_a = eigen_structure(a);
  const auto eigen_astar = eigen_structure(astar);
  require_diagonalizable(eigen_a);
  require_diagonalizable(eigen_astar);
  const auto verdict = decide_irreducible(a, astar, irreducibility_options);
  return is_tridiagonal_pair(eigen_a, eigen_astar, verdict.status, options);
}

}  // namespace hesspair
