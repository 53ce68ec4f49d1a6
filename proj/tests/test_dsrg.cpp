#include "doctest.h"

#include <random>

#include "dsrgkit/dsrg.hpp"
#include "dsrgkit/errors.hpp"
#include "dsrgkit/spectra.hpp"
#include "oracles.hpp"

using namespace dsrgkit;

namespace {

ConnectionSet cs(const ExtensionSpec& G, ElementSet X, ElementSet Y) {
  return make_connection_set(G.base(), std::move(X), std::move(Y));
}

ElementSet to_set(const std::vector<int>& v) { return ElementSet(v.begin(), v.end()); }

std::optional<DsrgParams> as_params(const std::optional<std::array<std::int64_t, 5>>& a) {
  if (!a) return std::nullopt;
  return DsrgParams{(*a)[0], (*a)[1], (*a)[2], (*a)[3], (*a)[4]};
}

std::optional<DsrgParams> inferred(const ExtensionSpec& G, const ConnectionSet& S) {
  if (is_degenerate(G, S)) return std::nullopt;
  const Inference r = infer_dsrg_params(G, S);
  if (const auto* p = std::get_if<DsrgParams>(&r)) return *p;
  return std::nullopt;
}

ConnectionSet split(const ExtensionSpec& G, const ElementSet& S) {
  ElementSet X, Y;
  for (Rank u : S) (G.beta_part(u) ? Y : X).push_back(G.base_part(u));
  return cs(G, X, Y);
}

ConnectionSet reversed(const ExtensionSpec& G, const ConnectionSet& S) {
  ElementSet inv;
  for (Rank u : group_elements(G, S)) inv.push_back(G.inv(u));
  return split(G, normalized(inv));
}

// Runs all four inference paths, checks they agree, returns the common answer.
std::optional<DsrgParams> triangulate(const ExtensionSpec& G, const oracle::Ext& R, const ConnectionSet& S) {
  const auto a = inferred(G, S);
  const auto b = infer_params_matrix(G, S);
  const auto c = infer_params_lemma6(G, S);
  const std::vector<int> X(S.X.begin(), S.X.end()), Y(S.Y.begin(), S.Y.end());
  const auto d = as_params(oracle::dsrg_params(R, X, Y));
  REQUIRE(a == b);
  REQUIRE(a == c);
  REQUIRE(a == d);
  if (a) {
    REQUIRE(verify_dsrg_matrix(G, S, *a));
    REQUIRE(lemma6_residuals(G, S, *a).vanish());
    REQUIRE_FALSE(check_declared_params(G, S, *a));
    REQUIRE(a->row_sum_identity_holds());
  }
  return a;
}

}  // namespace

TEST_CASE("make_connection_set validates") {
  const auto D3 = ExtensionSpec::dihedral(3);
  CHECK(cs(D3, {2, 1, 2}, {0}) == ConnectionSet{{1, 2}, {0}});
  CHECK_THROWS_AS(cs(D3, {0}, {}), InputError);
  CHECK_THROWS_AS(cs(D3, {3}, {}), InputError);
  CHECK_THROWS_AS(cs(D3, {}, {5}), InputError);
}

TEST_CASE("build_cayley examples") {
  const auto D3 = ExtensionSpec::dihedral(3);
  const Eigen::MatrixXi M = build_cayley(D3, cs(D3, {1}, {}));
  CHECK(M.diagonal().isZero());
  CHECK(M * M * M == Eigen::MatrixXi::Identity(6, 6));  // two directed triangles
  CHECK(M.rowwise().sum() == Eigen::VectorXi::Ones(6));

  for (int n : {3, 4, 5}) {
    const auto D = ExtensionSpec::dihedral(n);
    const Eigen::MatrixXi P = build_cayley(D, cs(D, {}, {0}));
    CHECK(P == P.transpose());
    CHECK(P * P == Eigen::MatrixXi::Identity(2 * n, 2 * n));
  }
  // Over a dicyclic group β⁻¹ = αβ ≠ β, so Y = {0} gives a directed graph.
  const auto Q = ExtensionSpec::dicyclic(4);
  const Eigen::MatrixXi D = build_cayley(Q, cs(Q, {}, {0}));
  CHECK(D != D.transpose());

  std::mt19937_64 rng(1);
  const auto G = ExtensionSpec::dicyclic(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto S = cs(G, to_set(oracle::random_subset(rng, 1, 6)), to_set(oracle::random_subset(rng, 0, 6)));
    const Eigen::MatrixXi A = build_cayley(G, S);
    const int k = static_cast<int>(S.size());
    CHECK(A.rowwise().sum() == Eigen::VectorXi::Constant(12, k));
    CHECK(A.colwise().sum() == Eigen::RowVectorXi::Constant(12, k));
  }
}

TEST_CASE("infer_dsrg_params examples") {
  const auto D3 = ExtensionSpec::dihedral(3);
  const auto r3 = infer_dsrg_params(D3, cs(D3, {1}, {1}));
  REQUIRE(std::holds_alternative<DsrgParams>(r3));
  CHECK(std::get<DsrgParams>(r3) == DsrgParams{6, 2, 1, 0, 1});

  const auto D5 = ExtensionSpec::dihedral(5);
  const auto r5 = infer_dsrg_params(D5, cs(D5, {1, 2}, {1, 2}));
  REQUIRE(std::holds_alternative<DsrgParams>(r5));
  CHECK(std::get<DsrgParams>(r5) == DsrgParams{10, 4, 2, 1, 2});

  const auto bad = infer_dsrg_params(D5, cs(D5, {1, 2}, {0}));
  REQUIRE(std::holds_alternative<Violation>(bad));
  const Violation v = std::get<Violation>(bad);
  CHECK(v.kind == ViolationKind::CoeffMismatch);
  CHECK(v.expected != v.actual);

  CHECK_THROWS_AS(infer_dsrg_params(D3, cs(D3, {}, {})), DegenerateError);
  CHECK_THROWS_AS(infer_dsrg_params(D3, cs(D3, {1, 2}, {0, 1, 2})), DegenerateError);
}

TEST_CASE("violations are reproducible at the witness") {
  const auto D5 = ExtensionSpec::dihedral(5);
  const auto S = cs(D5, {1, 2}, {1, 2});
  const auto v = check_declared_params(D5, S, DsrgParams{10, 4, 2, 1, 1});
  REQUIRE(v);
  CHECK(v->witness == 0);
  CHECK(v->expected == 1);
  CHECK(v->actual == 2);
  const AlgElem S2 = convolve(D5, connection_element(D5, S), connection_element(D5, S));
  CHECK(S2[v->witness] == v->actual);

  const auto deg = check_declared_params(D5, S, DsrgParams{10, 5, 2, 1, 2});
  REQUIRE(deg);
  CHECK(deg->kind == ViolationKind::NotRegular);
}

TEST_CASE("verify_dsrg_matrix examples") {
  const auto D3 = ExtensionSpec::dihedral(3);
  CHECK(verify_dsrg_matrix(D3, cs(D3, {1}, {1}), DsrgParams{6, 2, 1, 0, 1}));
  CHECK_FALSE(verify_dsrg_matrix(D3, cs(D3, {1}, {1}), DsrgParams{6, 2, 1, 0, 2}));
  const DsrgParams srg{6, 2, 0, 1, 2};
  CHECK(verify_dsrg_matrix(D3, cs(D3, {1, 2}, {}), srg));
  CHECK(kind_of(srg) == GraphKind::StronglyRegular);
  CHECK(kind_of(DsrgParams{6, 2, 1, 0, 1}) == GraphKind::Dsrg);
  CHECK(kind_of(DsrgParams{7, 3, 1, 1, 0}) == GraphKind::Tournament);

  Limits lim;
  lim.oracle_max_vertices = 4;
  CHECK_THROWS_AS(verify_dsrg_matrix(D3, cs(D3, {1}, {1}), srg, lim), CapError);
}

TEST_CASE("lemma6_residuals examples") {
  const auto D3 = ExtensionSpec::dihedral(3);
  const auto r = lemma6_residuals(D3, cs(D3, {1}, {1}), DsrgParams{6, 2, 1, 0, 1});
  CHECK(r.eq2.is_zero());
  CHECK(r.eq3.is_zero());
  CHECK(r.vanish());

  const auto r4 = lemma6_residuals(D3, cs(D3, {1}, {0, 2}), DsrgParams{6, 3, 2, 1, 2});
  CHECK(r4.vanish());

  // Residuals are affine in μ: shifting μ by one shifts eq3 by Ā.
  const auto S = cs(D3, {1}, {0, 2});
  const auto w = lemma6_residuals(D3, S, DsrgParams{6, 3, 1, 1, 2});
  CHECK_FALSE(w.eq3.is_zero());
  CHECK(w.eq3 - r4.eq3 == all_ones(Carrier::A, 3) - from_set(D3.base(), S.Y));
}

TEST_CASE("three-way agreement, exhaustive on small dihedral and dicyclic groups") {
  const std::vector<std::pair<ExtensionSpec, oracle::Ext>> groups{
      {ExtensionSpec::dihedral(2), oracle::dihedral(2)}, {ExtensionSpec::dihedral(3), oracle::dihedral(3)},
      {ExtensionSpec::dihedral(4), oracle::dihedral(4)}, {ExtensionSpec::dicyclic(2), oracle::dicyclic(2)},
      {ExtensionSpec::dicyclic(4), oracle::dicyclic(4)}, {ExtensionSpec::dihedral(5), oracle::dihedral(5)},
  };
  for (const auto& [G, R] : groups) {
    const std::size_t n = G.base_order();
    for (std::uint32_t xm = 0; xm < (1u << (n - 1)); ++xm)
      for (std::uint32_t ym = 0; ym < (1u << n); ++ym) {
        ElementSet X, Y;
        for (Rank i = 0; i + 1 < n; ++i)
          if (xm >> i & 1) X.push_back(i + 1);
        for (Rank i = 0; i < n; ++i)
          if (ym >> i & 1) Y.push_back(i);
        triangulate(G, R, cs(G, X, Y));
      }
  }
}

TEST_CASE("three-way agreement on random sets up to order 32") {
  std::mt19937_64 rng(77);
  std::vector<std::pair<ExtensionSpec, oracle::Ext>> groups;
  for (int n = 6; n <= 16; ++n) {
    groups.emplace_back(ExtensionSpec::dihedral(n), oracle::dihedral(n));
    if (n % 2 == 0) groups.emplace_back(ExtensionSpec::dicyclic(n), oracle::dicyclic(n));
  }
  int found = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto& [G, R] = groups[trial % groups.size()];
    const int n = static_cast<int>(G.base_order());
    // Half the trials start from a coset-union shape, which is far more likely to be a DSRG.
    ConnectionSet S;
    if (trial % 2 == 0) {
      S = cs(G, to_set(oracle::random_subset(rng, 1, n)), to_set(oracle::random_subset(rng, 0, n)));
    } else {
      ElementSet X;
      for (Rank x = 1; 2 * x < static_cast<Rank>(n); ++x) X.push_back(rng() % 2 ? x : n - x);
      S = cs(G, X, rng() % 2 ? X : ElementSet(X.rbegin(), X.rend()));
    }
    if (triangulate(G, R, S)) ++found;
  }
  CHECK(found > 0);
}

TEST_CASE("proper DSRGs have three integral eigenvalues and reversal keeps the parameters") {
  for (int n = 3; n <= 7; ++n) {
    const auto G = ExtensionSpec::dihedral(n);
    for (std::uint32_t xm = 0; xm < (1u << (n - 1)); ++xm)
      for (std::uint32_t ym = 0; ym < (1u << n); ++ym) {
        ElementSet X, Y;
        for (int i = 0; i + 1 < n; ++i)
          if (xm >> i & 1) X.push_back(i + 1);
        for (int i = 0; i < n; ++i)
          if (ym >> i & 1) Y.push_back(i);
        const auto S = cs(G, X, Y);
        const auto p = inferred(G, S);
        if (!p) continue;
        CHECK(inferred(G, reversed(G, S)) == p);
        if (!p->is_proper()) continue;
        const auto spec = full_spectrum(G, group_elements(G, S));
        CHECK(spec.distinct() == 3);
        CHECK(spec.all_integral);
      }
  }
}
