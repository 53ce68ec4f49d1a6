#include "doctest.h"

#include "dsrgkit/errors.hpp"
#include "dsrgkit/extension.hpp"
#include "oracles.hpp"

using namespace dsrgkit;

namespace {

ExtElement el(std::initializer_list<int> a, int beta) { return ExtElement{GroupVector{a}, beta}; }

std::vector<ExtensionSpec> small_extensions() {
  std::vector<ExtensionSpec> out;
  for (int n = 1; n <= 8; ++n) out.push_back(ExtensionSpec::dihedral(n));
  for (int n = 2; n <= 8; n += 2) out.push_back(ExtensionSpec::dicyclic(n));
  const auto A = AbelianGroup::make({2, 4});
  out.push_back(ExtensionSpec::make(A, Involution::make(A, {GroupVector{{1, 0}}, GroupVector{{0, 3}}}),
                                    GroupVector{{1, 0}}));
  const auto K = AbelianGroup::make({2, 2});
  out.push_back(ExtensionSpec::make(K, Involution::make(K, {GroupVector{{0, 1}}, GroupVector{{1, 0}}}),
                                    GroupVector{{1, 1}}));
  return out;
}

}  // namespace

TEST_CASE("make_extension") {
  const auto Z5 = AbelianGroup::make({5});
  const auto D5 = ExtensionSpec::make(Z5, Involution::negation(Z5), GroupVector{{0}});
  CHECK(D5.order() == 10);
  CHECK(D5.is_dihedral_type());
  CHECK_FALSE(D5.is_abelian());

  const auto Z4 = AbelianGroup::make({4});
  const auto Q8 = ExtensionSpec::make(Z4, Involution::negation(Z4), GroupVector{{2}});
  CHECK(Q8.order() == 8);
  CHECK_FALSE(Q8.is_dihedral_type());

  CHECK_THROWS_AS(ExtensionSpec::make(Z4, Involution::negation(Z4), GroupVector{{1}}), ValidationError);
  CHECK_THROWS_AS(ExtensionSpec::dicyclic(5), InputError);
}

TEST_CASE("multiplication rules") {
  const auto D5 = ExtensionSpec::dihedral(5);
  CHECK(D5.mul(el({0}, 1), el({0}, 1)) == el({0}, 0));
  const auto Q8 = ExtensionSpec::dicyclic(4);
  CHECK(Q8.mul(el({0}, 1), el({0}, 1)) == el({2}, 0));
  CHECK(D5.inv(el({1}, 1)) == el({1}, 1));
  CHECK(D5.mul(el({1}, 1), el({2}, 0)) == el({4}, 1));  // (a,1)(b,0) = (a + f(b), 1)
  CHECK(D5.mul(el({1}, 0), el({2}, 1)) == el({3}, 1));
}

TEST_CASE("element order contract") {
  const auto D3 = ExtensionSpec::dihedral(3);
  const auto els = D3.elements();
  REQUIRE(els.size() == 6);
  CHECK(els[0] == el({0}, 0));
  CHECK(els[3] == el({0}, 1));
  CHECK(ExtensionSpec::dicyclic(4).elements().size() == 8);
  for (const auto& G : small_extensions()) {
    CHECK(G.elements().size() == 2 * G.base_order());
    for (Rank u = 0; u < G.order(); ++u) CHECK(G.rank(G.element(u)) == u);
  }
}

TEST_CASE("group axioms exhaustively up to order 16") {
  for (const auto& G : small_extensions()) {
    const Rank N = static_cast<Rank>(G.order());
    for (Rank u = 0; u < N; ++u) {
      REQUIRE(G.mul(u, G.inv(u)) == 0);
      REQUIRE(G.mul(G.inv(u), u) == 0);
      for (Rank v = 0; v < N; ++v) {
        REQUIRE(G.inv(G.mul(u, v)) == G.mul(G.inv(v), G.inv(u)));
        for (Rank w = 0; w < N; ++w) REQUIRE(G.mul(G.mul(u, v), w) == G.mul(u, G.mul(v, w)));
      }
    }
  }
}

TEST_CASE("conjugation by beta is f") {
  for (const auto& G : small_extensions()) {
    const Rank beta = G.beta_rank();
    for (Rank a = 0; a < G.base_order(); ++a) CHECK(G.mul(G.mul(beta, a), G.inv(beta)) == G.f()(a));
  }
}

TEST_CASE("non-abelian iff f is not the identity") {
  std::vector<ExtensionSpec> gs = small_extensions();
  const auto Z3 = AbelianGroup::make({3});
  gs.push_back(ExtensionSpec::make(Z3, Involution::identity(Z3), GroupVector{{0}}));
  for (const auto& G : gs) {
    bool commutative = true;
    for (Rank u = 0; u < G.order() && commutative; ++u)
      for (Rank v = 0; v < G.order(); ++v)
        if (G.mul(u, v) != G.mul(v, u)) {
          commutative = false;
          break;
        }
    CHECK(commutative == G.is_abelian());
  }
}

TEST_CASE("multiplication agrees with the reference implementation") {
  const std::vector<std::pair<ExtensionSpec, oracle::Ext>> cases{
      {ExtensionSpec::dihedral(6), oracle::dihedral(6)},
      {ExtensionSpec::dicyclic(6), oracle::dicyclic(6)},
      {ExtensionSpec::dihedral(7), oracle::dihedral(7)},
  };
  for (const auto& [G, R] : cases)
    for (Rank u = 0; u < G.order(); ++u)
      for (Rank v = 0; v < G.order(); ++v) REQUIRE(G.mul(u, v) == static_cast<Rank>(R.mul(u, v)));
}

TEST_CASE("multiplication table") {
  const auto G = ExtensionSpec::dicyclic(6);
  const MultiplicationTable T(G);
  for (Rank u = 0; u < G.order(); ++u) {
    CHECK(T.inv(u) == G.inv(u));
    for (Rank v = 0; v < G.order(); ++v) CHECK(T.mul(u, v) == G.mul(u, v));
  }
  Limits lim;
  lim.oracle_max_vertices = 10;
  CHECK_THROWS_AS(MultiplicationTable(G, lim), CapError);
}
