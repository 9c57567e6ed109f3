#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <optional>

#include "hesspair/generate.hpp"
#include "hesspair/hessenberg.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace hesspair;

namespace {
const FieldSpec Q = FieldSpec::rationals();

std::vector<FieldElement> elems(FieldSpec spec, std::initializer_list<long> xs) {
  std::vector<FieldElement> out;
  for (long x : xs) out.emplace_back(spec, x);
  return out;
}

Subspace line(FieldSpec spec, std::size_t n, std::size_t i) { return Subspace::span(spec, n, {unit_vector(spec, n, i)}); }

// Canonical worked example, written out by hand.
Matrix canonical_a() { return Matrix::from_ints(Q, {{2, 0, 0}, {1, 1, 0}, {0, 1, 0}}); }
Matrix canonical_astar() { return Matrix::from_ints(Q, {{0, 1, 0}, {0, 1, 1}, {0, 0, 2}}); }

OrderedEigenData ordered(const Matrix& m, std::initializer_list<long> thetas) {
  auto t = elems(m.spec(), thetas);
  return OrderedEigenData::from_eigenvalues(eigen_structure(m), t);
}

std::vector<Ordering> all_orderings(std::size_t k) {
  std::vector<Ordering> out;
  Ordering o = identity_ordering(k);
  do out.push_back(o);
  while (std::next_permutation(o.begin(), o.end()));
  return out;
}

bool oracle_hessenberg(const Matrix& a, const Matrix& astar, const EigenStructure& ea, const EigenStructure& eas,
                       const OrderingPair& op) {
  const std::size_t unbounded = a.rows();
  return oracle::block_pattern(astar, ea.eigenspaces, op.a, 1, unbounded) &&
         oracle::block_pattern(a, eas.eigenspaces, op.astar, 1, unbounded);
}

SplitFormParams random_params(FieldSpec spec, std::mt19937_64& rng, std::size_t max_d, std::size_t max_dim) {
  SplitFormParams params;
  if (spec.is_prime_field()) max_d = std::min<std::size_t>(max_d, spec.p() - 1);
  const std::size_t d = rng() % (max_d + 1);
  while (params.theta.size() <= d) {
    auto x = testing::random_element(spec, rng);
    if (std::find(params.theta.begin(), params.theta.end(), x) == params.theta.end()) params.theta.push_back(x);
  }
  while (params.theta_star.size() <= d) {
    auto x = testing::random_element(spec, rng);
    if (std::find(params.theta_star.begin(), params.theta_star.end(), x) == params.theta_star.end()) {
      params.theta_star.push_back(x);
    }
  }
  for (std::size_t i = 0; i <= d; ++i) params.dims.push_back(1 + rng() % max_dim);
  return params;
}

}  // namespace

TEST_CASE("OrderedEigenData flags and validation") {
  auto ord = ordered(canonical_a(), {0, 1, 2});
  CHECK(ord.d() == 2);
  CHECK(ord.flag(-1).is_zero());
  CHECK(ord.flag(2).is_full());
  CHECK(ord.flag(7).is_full());
  CHECK(ord.flag(0) == line(Q, 3, 2));
  CHECK(ord.flag(1) == Subspace::span(Q, 3, {unit_vector(Q, 3, 1), unit_vector(Q, 3, 2)}));
  CHECK(ord.coflag(0).is_full());
  CHECK(ord.coflag(2) == ord.space(2));
  CHECK(ord.coflag(3).is_zero());
  CHECK(ord.reversed().thetas() == elems(Q, {2, 1, 0}));
  CHECK_THROWS_AS(OrderedEigenData(eigen_structure(canonical_a()), Ordering{0, 0, 1}), Error);
  CHECK_THROWS_AS(ordered(canonical_a(), {2, 1, 5}), Error);
  CHECK_THROWS_AS(OrderedEigenData(eigen_structure(Matrix::from_ints(Q, {{0, 1}, {0, 0}})), Ordering{0}), Error);
}

TEST_CASE("is_hessenberg_wrt examples") {
  SUBCASE("d = delta = 1 is always Hessenberg") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      const FieldSpec spec = FieldSpec::prime(5);
      Matrix p = testing::random_invertible(spec, 3, rng);
      Matrix a = p * Matrix::from_ints(spec, {{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}) * inverse(p);
      Matrix astar = testing::random_invertible(spec, 3, rng);
      astar = astar * Matrix::from_ints(spec, {{3, 0, 0}, {0, 4, 0}, {0, 0, 4}}) * inverse(astar);
      for (const auto& oa : all_orderings(2)) {
        for (const auto& os : all_orderings(2)) {
          CHECK(is_hessenberg_wrt(a, astar, OrderedEigenData(eigen_structure(a), oa),
                                  OrderedEigenData(eigen_structure(astar), os)));
        }
      }
    }
  }
  SUBCASE("canonical example") {
    for (auto order : {std::initializer_list<long>{0, 1, 2}, std::initializer_list<long>{2, 1, 0}}) {
      CHECK(is_hessenberg_wrt(canonical_a(), canonical_astar(), ordered(canonical_a(), order),
                              ordered(canonical_astar(), {0, 1, 2})));
    }
    CHECK_FALSE(is_hessenberg_wrt(canonical_a(), canonical_astar(), ordered(canonical_a(), {1, 0, 2}),
                                  ordered(canonical_astar(), {0, 1, 2})));
  }
  SUBCASE("swap permutation") {
    Matrix a = Matrix::from_ints(Q, {{0, 0, 0}, {0, 1, 0}, {0, 0, 2}});
    Matrix astar = Matrix::from_ints(Q, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
    for (const auto& os : all_orderings(2)) {
      CHECK_FALSE(is_hessenberg_wrt(a, astar, ordered(a, {0, 1, 2}), OrderedEigenData(eigen_structure(astar), os)));
    }
  }
  CHECK_THROWS_AS(is_hessenberg_wrt(canonical_a(), canonical_astar(), ordered(canonical_astar(), {0, 1, 2}),
                                    ordered(canonical_a(), {0, 1, 2})),
                  Error);
}

TEST_CASE("find_hessenberg_orderings examples") {
  SUBCASE("scalars") {
    auto pairs = find_hessenberg_orderings(Matrix::scalar(Q, 2, FieldElement(Q, 3)),
                                           Matrix::scalar(Q, 2, FieldElement(Q, 5)));
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0] == OrderingPair{{0}, {0}});
  }
  SUBCASE("swap permutation matches brute force") {
    Matrix a = Matrix::from_ints(Q, {{0, 0, 0}, {0, 1, 0}, {0, 0, 2}});
    Matrix astar = Matrix::from_ints(Q, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
    auto ea = eigen_structure(a);
    auto eas = eigen_structure(astar);
    auto pairs = find_hessenberg_orderings(a, astar);
    std::vector<OrderingPair> expected;
    for (const auto& oa : all_orderings(3)) {
      for (const auto& os : all_orderings(2)) {
        if (oracle_hessenberg(a, astar, ea, eas, {oa, os})) expected.push_back({oa, os});
      }
    }
    CHECK(pairs == expected);
    // A* swaps e1 and e3, so e1 and e3 must be adjacent or e2 must come first.
    std::vector<Ordering> a_orders;
    for (const auto& p : pairs) {
      if (a_orders.empty() || a_orders.back() != p.a) a_orders.push_back(p.a);
    }
    CHECK(a_orders == std::vector<Ordering>{{0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}});
    CHECK(pairs.size() == 8);
  }
  SUBCASE("generated instance contains its generating ordering") {
    auto inst = gen_split_form(FieldSpec::prime(7),
                               {{1, 2, 1}, elems(FieldSpec::prime(7), {3, 0, 5}), elems(FieldSpec::prime(7), {1, 6, 2})},
                               4);
    auto ea = eigen_structure(inst.a);
    auto eas = eigen_structure(inst.astar);
    auto pairs = find_hessenberg_orderings(ea, eas);
    OrderingPair generating{OrderedEigenData::from_eigenvalues(ea, inst.truth.split.theta).order(),
                            OrderedEigenData::from_eigenvalues(eas, inst.truth.split.theta_star).order()};
    CHECK(std::find(pairs.begin(), pairs.end(), generating) != pairs.end());
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(find_hessenberg_orderings(Matrix::from_ints(Q, {{0, 1}, {0, 0}}), Matrix::identity(Q, 2)), Error);
    Matrix big(Q, 4, 4);
    for (std::size_t i = 0; i < 4; ++i) big(i, i) = FieldElement(Q, static_cast<long>(i));
    SearchOptions tight;
    tight.max_orderings = 23;
    try {
      find_hessenberg_orderings(big, big, tight);
      FAIL("expected SearchBudgetExceeded");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SearchBudgetExceeded);
    }
    tight.max_orderings = 24;
    CHECK(find_hessenberg_orderings(big, big, tight).size() == 24 * 24);
  }
}

TEST_CASE("pruned ordering search equals brute force") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const FieldSpec spec = trial % 3 == 0 ? Q : testing::random_small_field(rng);
    // Diagonalizable matrices with eigenvalue multiplicities, in random bases.
    const std::size_t n = 2 + rng() % 4;
    auto diagonal = [&] {
      Matrix dm(spec, n, n);
      for (std::size_t i = 0; i < n; ++i) dm(i, i) = FieldElement(spec, static_cast<long>(rng() % 4));
      Matrix p = testing::random_invertible(spec, n, rng);
      return p * dm * inverse(p);
    };
    Matrix a = diagonal();
    Matrix astar = trial % 2 ? diagonal() : testing::random_matrix(spec, n, n, rng);
    EigenStructure ea = eigen_structure(a);
    std::optional<EigenStructure> maybe;
    try {
      maybe = eigen_structure(astar);
    } catch (const Error&) {
      continue;
    }
    if (!maybe->diagonalizable) continue;
    const EigenStructure& eas = *maybe;
    auto pruned = find_hessenberg_orderings(ea, eas);
    CHECK(pruned == find_hessenberg_orderings_brute_force(ea, eas));
    std::vector<OrderingPair> expected;
    for (const auto& oa : all_orderings(ea.eigenvalues.size())) {
      for (const auto& os : all_orderings(eas.eigenvalues.size())) {
        if (oracle_hessenberg(a, astar, ea, eas, {oa, os})) expected.push_back({oa, os});
      }
    }
    CHECK(pruned == expected);
  }
}

TEST_CASE("V_ij lattice") {
  auto ord_a = ordered(canonical_a(), {0, 1, 2});
  auto ord_s = ordered(canonical_astar(), {0, 1, 2});
  auto lattice = build_vij_lattice(ord_a, ord_s);
  CHECK(lattice.d() == 2);
  CHECK(lattice.delta() == 2);
  CHECK(lattice.cell(2, 2).is_full());
  CHECK(lattice.cell(3, 3).is_full());
  for (long j = -1; j <= 3; ++j) CHECK(lattice.cell(-1, j).is_zero());
  for (long i = -1; i <= 3; ++i) CHECK(lattice.cell(i, -1).is_zero());
  for (long i = 0; i <= 2; ++i) {
    CHECK(lattice.cell(i, 2) == ord_a.flag(i));
    CHECK(lattice.cell(2, i) == ord_s.flag(i));
  }
  for (long i = 0; i <= 2; ++i) {
    for (long j = 0; j <= 2; ++j) {
      if (i + j < 2) CHECK(lattice.cell(i, j).is_zero());
    }
  }
  CHECK_THROWS_AS(lattice.cell(-2, 0), Error);
  CHECK_THROWS_AS(lattice.cell(0, 4), Error);
}

TEST_CASE("V_ij cells agree with element enumeration") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    const FieldSpec spec = FieldSpec::prime(trial % 2 ? 2 : 3);
    auto inst = gen_split_form(spec, random_params(spec, rng, 2, 2), rng());
    if (inst.a.rows() > 5) continue;
    inst = conjugate(inst, rng());
    auto ord_a = OrderedEigenData::from_eigenvalues(eigen_structure(inst.a), inst.truth.split.theta);
    auto ord_s = OrderedEigenData::from_eigenvalues(eigen_structure(inst.astar), inst.truth.split.theta_star);
    auto lattice = build_vij_lattice(ord_a, ord_s);
    const std::size_t n = inst.a.rows();
    for (long i = -1; i <= static_cast<long>(lattice.d()) + 1; ++i) {
      for (long j = -1; j <= static_cast<long>(lattice.delta()) + 1; ++j) {
        // Sum flags rebuilt from eigenvectors by enumeration.
        std::vector<Vector> left, right;
        for (long k = 0; k <= std::min<long>(i, static_cast<long>(lattice.d())); ++k) {
          for (auto& v : ord_a.space(static_cast<std::size_t>(k)).vectors()) left.push_back(v);
        }
        for (long k = 0; k <= std::min<long>(j, static_cast<long>(lattice.delta())); ++k) {
          for (auto& v : ord_s.space(static_cast<std::size_t>(k)).vectors()) right.push_back(v);
        }
        auto ls = oracle::span_set(spec, n, left);
        auto rs = oracle::span_set(spec, n, right);
        std::set<oracle::Key> both;
        std::set_intersection(ls.begin(), ls.end(), rs.begin(), rs.end(), std::inserter(both, both.end()));
        CHECK(oracle::elements(lattice.cell(i, j)) == both);
      }
    }
  }
}

TEST_CASE("lattice action and vanishing below the antidiagonal") {
  std::mt19937_64 rng(43);
  int irreducible_seen = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const FieldSpec spec = trial % 4 == 0 ? Q : FieldSpec::prime(trial % 4 == 1 ? 5 : 7);
    auto inst = conjugate(gen_split_form(spec, random_params(spec, rng, 3, 2), rng()), rng());
    auto ord_a = OrderedEigenData::from_eigenvalues(eigen_structure(inst.a), inst.truth.split.theta);
    auto ord_s = OrderedEigenData::from_eigenvalues(eigen_structure(inst.astar), inst.truth.split.theta_star);
    auto lattice = build_vij_lattice(ord_a, ord_s);
    const long d = static_cast<long>(lattice.d());
    const long delta = static_cast<long>(lattice.delta());
    // (A - θ_i) V_ij ⊆ V_{i-1,j+1} and (A* - θ*_j) V_ij ⊆ V_{i+1,j-1}.
    for (long i = 0; i <= d; ++i) {
      for (long j = 0; j <= delta; ++j) {
        const auto& cell = lattice.cell(i, j);
        CHECK(subspace_contains(lattice.cell(i - 1, j + 1),
                                apply(shifted(inst.a, ord_a.theta(static_cast<std::size_t>(i))), cell)));
        CHECK(subspace_contains(lattice.cell(i + 1, j - 1),
                                apply(shifted(inst.astar, ord_s.theta(static_cast<std::size_t>(j))), cell)));
      }
    }
    if (decide_irreducible(inst.a, inst.astar).status != Irreducibility::Irreducible) continue;
    ++irreducible_seen;
    CHECK(d == delta);
    for (long i = 0; i <= d; ++i) {
      for (long j = 0; j <= d; ++j) {
        if (i + j < d) CHECK(lattice.cell(i, j).is_zero());
      }
    }
    for (std::size_t r = 0; r < static_cast<std::size_t>(d); ++r) CHECK(wr_witness(lattice, r).is_zero());
    CHECK(wr_witness(lattice, static_cast<std::size_t>(d)).is_full());
  }
  CHECK(irreducible_seen > 40);
}

TEST_CASE("wr_witness edge cases") {
  auto scalar = Matrix::scalar(Q, 2, FieldElement(Q, 1));
  auto ord = OrderedEigenData(eigen_structure(scalar), Ordering{0});
  auto lattice = build_vij_lattice(ord, ord);
  CHECK(wr_witness(lattice, 0).is_full());
  CHECK_THROWS_AS(wr_witness(lattice, 1), Error);
}

TEST_CASE("construct_split_from_hessenberg examples") {
  SUBCASE("canonical example recovers the coordinate flag") {
    auto ord_a = ordered(canonical_a(), {0, 1, 2});
    auto ord_s = ordered(canonical_astar(), {0, 1, 2});
    auto split = construct_split_from_hessenberg(canonical_a(), canonical_astar(), ord_a, ord_s,
                                                 Irreducibility::Irreducible);
    REQUIRE(split.subspaces.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(split.subspaces[i] == line(Q, 3, i));
    CHECK(split == split_from_formula(ord_a, ord_s));
    CHECK(split.theta == elems(Q, {0, 1, 2}));
  }
  SUBCASE("d = 0") {
    auto m = Matrix::scalar(Q, 1, FieldElement(Q, 4));
    auto ord = OrderedEigenData(eigen_structure(m), Ordering{0});
    auto split = construct_split_from_hessenberg(m, m, ord, ord, Irreducibility::Irreducible);
    REQUIRE(split.subspaces.size() == 1);
    CHECK(split.subspaces[0].is_full());
  }
  SUBCASE("errors") {
    auto expect_code = [](auto&& fn, ErrorCode code) {
      try {
        fn();
        FAIL("expected an error");
      } catch (const Error& e) {
        CHECK(e.code() == code);
      }
    };
    Matrix a = Matrix::from_ints(Q, {{0, 0, 0}, {0, 1, 0}, {0, 0, 2}});
    Matrix astar = Matrix::from_ints(Q, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
    expect_code([&] { construct_split_from_hessenberg(a, astar, ordered(a, {0, 1, 2}), ordered(astar, {1, -1}),
                                                      Irreducibility::Irreducible); },
                ErrorCode::NotHessenberg);
    auto ord_a = ordered(canonical_a(), {0, 1, 2});
    auto ord_s = ordered(canonical_astar(), {0, 1, 2});
    expect_code([&] { construct_split_from_hessenberg(canonical_a(), canonical_astar(), ord_a, ord_s,
                                                      Irreducibility::Reducible); },
                ErrorCode::NotIrreducible);
    expect_code([&] { construct_split_from_hessenberg(canonical_a(), canonical_astar(), ord_a, ord_s,
                                                      Irreducibility::Undetermined); },
                ErrorCode::IrreducibilityUndetermined);
    expect_code([&] { split_from_formula(ordered(a, {0, 1, 2}), ordered(astar, {1, -1})); },
                ErrorCode::DDeltaMismatch);
  }
}

TEST_CASE("verify_split and check_split") {
  const FieldSpec gf7 = FieldSpec::prime(7);
  auto inst = gen_split_form(gf7, {{1, 2, 1}, elems(gf7, {3, 0, 5}), elems(gf7, {1, 6, 2})}, 9);
  CHECK(verify_split(inst.a, inst.astar, inst.truth.split));

  auto bad = inst.truth.split;
  std::reverse(bad.theta.begin(), bad.theta.end());
  auto check = check_split(inst.a, inst.astar, bad);
  CHECK_FALSE(check.valid);
  CHECK(check.violation.find("U_0") != std::string::npos);

  auto swapped = inst.truth.split;
  std::swap(swapped.subspaces[0], swapped.subspaces[2]);
  CHECK_FALSE(verify_split(inst.a, inst.astar, swapped));

  auto overlapping = inst.truth.split;
  overlapping.subspaces[1] = overlapping.subspaces[0];
  CHECK(check_split(inst.a, inst.astar, overlapping).violation.find("direct sum") != std::string::npos);

  auto short_theta = inst.truth.split;
  short_theta.theta.pop_back();
  CHECK_THROWS_AS(verify_split(inst.a, inst.astar, short_theta), Error);

  auto scalar = Matrix::scalar(Q, 2, FieldElement(Q, 3));
  SplitDecomposition whole{{Subspace::full(Q, 2)}, elems(Q, {3}), elems(Q, {3})};
  CHECK(verify_split(scalar, scalar, whole));
}

TEST_CASE("split decompositions are unique for fixed eigenvalue sequences") {
  // Every triple of lines in GF(3)^3, checked against the formula.
  const FieldSpec gf3 = FieldSpec::prime(3);
  auto inst = conjugate(gen_split_form(gf3, {{1, 1, 1}, elems(gf3, {0, 1, 2}), elems(gf3, {2, 0, 1})}, 5), 6);
  auto formula = split_from_formula(
      OrderedEigenData::from_eigenvalues(eigen_structure(inst.a), inst.truth.split.theta),
      OrderedEigenData::from_eigenvalues(eigen_structure(inst.astar), inst.truth.split.theta_star));
  CHECK(formula == inst.truth.split);
  std::vector<Subspace> lines;
  for (const auto& v : oracle::all_vectors(gf3, 3)) {
    if (is_zero(v)) continue;
    Subspace l = Subspace::span(gf3, 3, {v});
    if (std::find(lines.begin(), lines.end(), l) == lines.end()) lines.push_back(l);
  }
  REQUIRE(lines.size() == 13);
  int passing = 0;
  for (const auto& u0 : lines) {
    for (const auto& u1 : lines) {
      for (const auto& u2 : lines) {
        SplitDecomposition cand{{u0, u1, u2}, inst.truth.split.theta, inst.truth.split.theta_star};
        if (!verify_split(inst.a, inst.astar, cand)) continue;
        ++passing;
        CHECK(cand == formula);
      }
    }
  }
  CHECK(passing == 1);

  // Re-spanning the true split with mixed bases gives the same canonical object.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const FieldSpec spec = trial % 2 ? Q : FieldSpec::prime(11);
    auto g = conjugate(gen_split_form(spec, random_params(spec, rng, 3, 3), rng()), rng());
    SplitDecomposition rebased = g.truth.split;
    for (auto& u : rebased.subspaces) u = Subspace::span(spec, g.a.rows(), testing::rebased(u, rng));
    CHECK(verify_split(g.a, g.astar, rebased));
    CHECK(rebased == g.truth.split);
    auto f = split_from_formula(OrderedEigenData::from_eigenvalues(eigen_structure(g.a), g.truth.split.theta),
                                OrderedEigenData::from_eigenvalues(eigen_structure(g.astar), g.truth.split.theta_star));
    CHECK(f == rebased);
  }
}

TEST_CASE("round trip between Hessenberg orderings and split decompositions") {
  std::mt19937_64 rng(53);
  int irreducible_seen = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const FieldSpec spec = trial % 3 == 0 ? Q : FieldSpec::prime(trial % 3 == 1 ? 5 : 11);
    auto inst = conjugate(gen_split_form(spec, random_params(spec, rng, 3, 2), rng()), rng());
    CHECK(recover_hessenberg_from_split(inst.a, inst.astar, inst.truth.split));
    auto verdict = decide_irreducible(inst.a, inst.astar);
    if (verdict.status != Irreducibility::Irreducible) continue;
    ++irreducible_seen;
    auto ea = eigen_structure(inst.a);
    auto eas = eigen_structure(inst.astar);
    auto ord_a = OrderedEigenData::from_eigenvalues(ea, inst.truth.split.theta);
    auto ord_s = OrderedEigenData::from_eigenvalues(eas, inst.truth.split.theta_star);
    auto split = construct_split_from_hessenberg(inst.a, inst.astar, ord_a, ord_s, verdict.status);
    CHECK(split == inst.truth.split);
    CHECK(verify_split(inst.a, inst.astar, split));
    CHECK(recover_hessenberg_from_split(inst.a, inst.astar, split));

    // Hessenberg for an ordering pair iff the formula gives a valid split.
    for (const auto& oa : all_orderings(ea.eigenvalues.size())) {
      for (const auto& os : all_orderings(eas.eigenvalues.size())) {
        OrderedEigenData a_ord(ea, oa);
        OrderedEigenData s_ord(eas, os);
        const bool hessenberg = is_hessenberg_wrt(inst.a, inst.astar, a_ord, s_ord);
        CHECK(hessenberg == verify_split(inst.a, inst.astar, split_from_formula(a_ord, s_ord)));
      }
    }
  }
  CHECK(irreducible_seen > 30);
}

TEST_CASE("recover_hessenberg_from_split needs no irreducibility") {
  const FieldSpec gf5 = FieldSpec::prime(5);
  std::vector<SplitFormParams> blocks{{{1, 1}, elems(gf5, {1, 3}), elems(gf5, {0, 2})},
                                      {{2, 1}, elems(gf5, {1, 3}), elems(gf5, {0, 2})}};
  auto inst = gen_reducible(gf5, blocks, 3);
  CHECK(decide_irreducible(inst.a, inst.astar).status == Irreducibility::Reducible);
  CHECK(verify_split(inst.a, inst.astar, inst.truth.split));
  CHECK(recover_hessenberg_from_split(inst.a, inst.astar, inst.truth.split));

  auto ord_a = OrderedEigenData::from_eigenvalues(eigen_structure(inst.a), inst.truth.split.theta);
  auto ord_s = OrderedEigenData::from_eigenvalues(eigen_structure(inst.astar), inst.truth.split.theta_star);
  CHECK(split_flags_match(inst.truth.split, ord_a, ord_s));
  CHECK_THROWS_AS(construct_split_from_hessenberg(inst.a, inst.astar, ord_a, ord_s, Irreducibility::Reducible), Error);

  auto broken = inst.truth.split;
  std::swap(broken.subspaces[0], broken.subspaces[1]);
  try {
    recover_hessenberg_from_split(inst.a, inst.astar, broken);
    FAIL("expected SplitInvalid");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SplitInvalid);
  }
}

TEST_CASE("flag equalities hold cell by cell") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    const FieldSpec spec = trial % 2 ? Q : FieldSpec::prime(7);
    auto inst = conjugate(gen_split_form(spec, random_params(spec, rng, 3, 3), rng()), rng());
    auto ord_a = OrderedEigenData::from_eigenvalues(eigen_structure(inst.a), inst.truth.split.theta);
    auto ord_s = OrderedEigenData::from_eigenvalues(eigen_structure(inst.astar), inst.truth.split.theta_star);
    const auto& u = inst.truth.split.subspaces;
    const std::size_t d = u.size() - 1;
    for (std::size_t i = 0; i <= d; ++i) {
      std::vector<Subspace> tail(u.begin() + static_cast<long>(i), u.end());
      std::vector<Subspace> head(u.begin(), u.begin() + static_cast<long>(i) + 1);
      CHECK(sum_all(spec, inst.a.rows(), tail) == ord_a.flag(static_cast<long>(d - i)));
      CHECK(sum_all(spec, inst.a.rows(), head) == ord_s.flag(static_cast<long>(i)));
    }
  }
}

TEST_CASE("dimension_profile") {
  const FieldSpec gf7 = FieldSpec::prime(7);
  auto inst = gen_split_form(gf7, {{1, 2, 1}, elems(gf7, {3, 0, 5}), elems(gf7, {1, 6, 2})}, 2);
  auto ord_a = OrderedEigenData::from_eigenvalues(eigen_structure(inst.a), inst.truth.split.theta);
  auto ord_s = OrderedEigenData::from_eigenvalues(eigen_structure(inst.astar), inst.truth.split.theta_star);
  auto profile = dimension_profile(inst.truth.split, ord_a, ord_s);
  const std::vector<std::size_t> expected{1, 2, 1};
  CHECK(profile.eigen_a == expected);
  CHECK(profile.eigen_astar == expected);
  CHECK(profile.split == expected);
  CHECK(profile.consistent());

  auto two_three = gen_split_form(Q, {{2, 3}, elems(Q, {0, 1}), elems(Q, {4, -1})}, 2);
  auto p2 = dimension_profile(
      two_three.truth.split, OrderedEigenData::from_eigenvalues(eigen_structure(two_three.a), two_three.truth.split.theta),
      OrderedEigenData::from_eigenvalues(eigen_structure(two_three.astar), two_three.truth.split.theta_star));
  CHECK(p2.split == std::vector<std::size_t>{2, 3});
  CHECK(p2.eigen_a == std::vector<std::size_t>{2, 3});
  CHECK(p2.eigen_astar == std::vector<std::size_t>{2, 3});

  auto m = Matrix::scalar(Q, 3, FieldElement(Q, 1));
  auto ord = OrderedEigenData(eigen_structure(m), Ordering{0});
  auto p0 = dimension_profile({{Subspace::full(Q, 3)}, elems(Q, {1}), elems(Q, {1})}, ord, ord);
  CHECK(p0.split == std::vector<std::size_t>{3});
  CHECK(p0.eigen_a == std::vector<std::size_t>{3});

  auto broken = inst.truth.split;
  std::swap(broken.subspaces[0], broken.subspaces[1]);
  CHECK_THROWS_AS(dimension_profile(broken, ord_a, ord_s), Error);
  CHECK_THROWS_AS(dimension_profile(inst.truth.split, ord_a.reversed(), ord_s), Error);

  DimensionProfile skewed{{1, 2}, {1, 2}, {2, 1}};
  CHECK(skewed.mismatches() == std::vector<std::size_t>{0, 1});
}

TEST_CASE("tridiagonal detection") {
  SUBCASE("n = 1") {
    auto m = Matrix::from_ints(Q, {{5}});
    auto v = is_tridiagonal_pair(m, m);
    CHECK(v.status == Tridiagonality::Tridiagonal);
    CHECK(v.orderings.size() == 1);
  }
  SUBCASE("canonical example has four tridiagonal orderings") {
    auto v = is_tridiagonal_pair(canonical_a(), canonical_astar());
    CHECK(v.status == Tridiagonality::Tridiagonal);
    const Ordering up{0, 1, 2};
    const Ordering down{2, 1, 0};
    CHECK(v.orderings == std::vector<OrderingPair>{{up, up}, {up, down}, {down, up}, {down, down}});
  }
  SUBCASE("reducible pairs are not tridiagonal") {
    auto id = Matrix::identity(Q, 2);
    auto v = is_tridiagonal_pair(id, id);
    CHECK(v.status == Tridiagonality::NotTridiagonal);
    CHECK(v.orderings.size() == 1);
  }
  SUBCASE("undetermined irreducibility") {
    auto ea = eigen_structure(canonical_a());
    auto eas = eigen_structure(canonical_astar());
    CHECK(is_tridiagonal_pair(ea, eas, Irreducibility::Undetermined).status == Tridiagonality::Undetermined);
  }
  SUBCASE("verdicts agree with the block-tridiagonal pattern") {
    std::mt19937_64 rng(61);
    int tridiagonal = 0;
    int not_tridiagonal = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const FieldSpec spec = FieldSpec::prime(trial % 2 ? 3 : 5);
      auto params = random_params(spec, rng, 3, 2);
      params.off_diagonal = trial % 3 == 0 ? OffDiagonal::Sparse : OffDiagonal::Nonzero;
      auto inst = conjugate(gen_split_form(spec, params, rng()), rng());
      auto ea = eigen_structure(inst.a);
      auto eas = eigen_structure(inst.astar);
      auto irr = decide_irreducible(inst.a, inst.astar).status;
      auto v = is_tridiagonal_pair(ea, eas, irr);
      std::vector<OrderingPair> expected;
      for (const auto& oa : all_orderings(ea.eigenvalues.size())) {
        for (const auto& os : all_orderings(eas.eigenvalues.size())) {
          if (oracle::block_pattern(inst.astar, ea.eigenspaces, oa, 1, 1) &&
              oracle::block_pattern(inst.a, eas.eigenspaces, os, 1, 1)) {
            expected.push_back({oa, os});
          }
        }
      }
      CHECK(v.orderings == expected);
      const bool should_be = irr == Irreducibility::Irreducible && !expected.empty();
      CHECK((v.status == Tridiagonality::Tridiagonal) == should_be);
      if (v.status == Tridiagonality::Tridiagonal) {
        ++tridiagonal;
        CHECK(ea.eigenvalues.size() == eas.eigenvalues.size());
        // Orderings come in reversal-closed families of four, or one when d = 0.
        for (const auto& op : v.orderings) {
          for (const auto& other : {OrderingPair{reversed(op.a), op.astar}, OrderingPair{op.a, reversed(op.astar)}}) {
            CHECK(std::find(v.orderings.begin(), v.orderings.end(), other) != v.orderings.end());
          }
        }
      } else {
        ++not_tridiagonal;
      }
    }
    CHECK(tridiagonal > 5);
    CHECK(not_tridiagonal > 5);
  }
}

TEST_CASE("tridiagonal pairs: splits exist for both the ordering and its reversal") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const FieldSpec spec = FieldSpec::prime(11);
    SplitFormParams params = random_params(spec, rng, 2, 1);
    auto inst = conjugate(gen_tridiagonal_form(spec, params, rng()), rng());
    auto ea = eigen_structure(inst.a);
    auto eas = eigen_structure(inst.astar);
    auto ord_a = OrderedEigenData::from_eigenvalues(ea, inst.truth.split.theta);
    auto ord_s = OrderedEigenData::from_eigenvalues(eas, inst.truth.split.theta_star);
    for (const auto& [oa, os] : {std::pair{ord_a, ord_s}, std::pair{ord_a.reversed(), ord_s},
                                 std::pair{ord_a, ord_s.reversed()}, std::pair{ord_a.reversed(), ord_s.reversed()}}) {
      CHECK(verify_split(inst.a, inst.astar, split_from_formula(oa, os)));
    }
  }
}
