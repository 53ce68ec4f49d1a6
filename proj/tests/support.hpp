#pragma once

// Shared by the unit tests and the acceptance binary: the bridge from library
// groups to the reference oracle, a zoo of small extensions, and the
// iff-versus-oracle comparison for the characterizing rules.

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dsrgkit/constructions.hpp"
#include "dsrgkit/errors.hpp"
#include "oracles.hpp"

namespace testsupport {

using namespace dsrgkit;

inline oracle::Ext reference(const ExtensionSpec& G) {
  oracle::Ext R;
  R.d = G.base().factors();
  for (const auto& im : G.f().images()) R.img.push_back(im.coords);
  R.alpha = G.alpha_vector().coords;
  return R;
}

inline std::optional<DsrgParams> oracle_params(const oracle::Table& R, const ConnectionSet& S) {
  const std::vector<int> X(S.X.begin(), S.X.end()), Y(S.Y.begin(), S.Y.end());
  const auto p = R.dsrg_params(X, Y);
  if (!p) return std::nullopt;
  return DsrgParams{(*p)[0], (*p)[1], (*p)[2], (*p)[3], (*p)[4]};
}

struct NamedGroup {
  std::string name;
  ExtensionSpec G;
};

inline void add_if_valid(std::vector<NamedGroup>& out, std::string name, const std::vector<int>& factors,
                         const std::vector<std::vector<int>>& images, const std::vector<int>& alpha) {
  try {
    const auto A = AbelianGroup::make(factors);
    std::vector<GroupVector> im;
    for (const auto& v : images) im.push_back(GroupVector{v});
    out.push_back({std::move(name), ExtensionSpec::make(A, Involution::make(A, im), GroupVector{alpha})});
  } catch (const ValidationError&) {
  }
}

/// Dihedral, dicyclic and abelian-twin extensions of cyclic A, plus a few
/// non-cyclic ones, all of order 2n ≤ max_order.
inline std::vector<NamedGroup> extension_zoo(std::size_t max_order) {
  std::vector<NamedGroup> out;
  for (int n = 2; 2 * n <= static_cast<int>(max_order); ++n) {
    out.push_back({"D" + std::to_string(n), ExtensionSpec::dihedral(n)});
    if (n % 2 == 0) out.push_back({"Dic" + std::to_string(n), ExtensionSpec::dicyclic(n)});
    add_if_valid(out, "Z" + std::to_string(n) + "xZ2", {n}, {{1}}, {0});
  }
  if (max_order >= 8) {
    add_if_valid(out, "Z2^2:swap", {2, 2}, {{0, 1}, {1, 0}}, {0, 0});
    add_if_valid(out, "Z2^2:swap,a=11", {2, 2}, {{0, 1}, {1, 0}}, {1, 1});
  }
  if (max_order >= 16) {
    add_if_valid(out, "Z2xZ4:inv", {2, 4}, {{1, 0}, {0, 3}}, {0, 0});
    add_if_valid(out, "Z2xZ4:inv,a=10", {2, 4}, {{1, 0}, {0, 3}}, {1, 0});
    add_if_valid(out, "Z2xZ4:inv,a=02", {2, 4}, {{1, 0}, {0, 3}}, {0, 2});
    add_if_valid(out, "Z2xZ4:twist", {2, 4}, {{1, 2}, {1, 1}}, {0, 0});
    add_if_valid(out, "Z2xZ4:5", {2, 4}, {{1, 0}, {1, 1}}, {0, 0});
    add_if_valid(out, "Z2^3:swap", {2, 2, 2}, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {0, 0, 0});
    add_if_valid(out, "Z2^3:swap,a=001", {2, 2, 2}, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {0, 0, 1});
    add_if_valid(out, "Z2^3:swap,a=110", {2, 2, 2}, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {1, 1, 0});
  }
  if (max_order >= 18) {
    add_if_valid(out, "Z3^2:neg", {3, 3}, {{2, 0}, {0, 2}}, {0, 0});
    add_if_valid(out, "Z3^2:swap", {3, 3}, {{0, 1}, {1, 0}}, {0, 0});
    add_if_valid(out, "Z3^2:half", {3, 3}, {{2, 0}, {0, 1}}, {0, 0});
    add_if_valid(out, "Z3^2:half,a=01", {3, 3}, {{2, 0}, {0, 1}}, {0, 1});
  }
  return out;
}

/// Calls fn(X) for every X ⊆ A with X ∩ f(X) = ∅ (so e ∉ X).
inline void for_each_f_free(const ExtensionSpec& G, const std::function<void(const ElementSet&)>& fn) {
  const auto& A = G.base();
  std::vector<std::pair<Rank, Rank>> orbits;
  for (Rank x = 1; x < A.order(); ++x)
    if (G.f()(x) > x) orbits.emplace_back(x, G.f()(x));
  std::vector<int> digit(orbits.size(), 0);
  while (true) {
    ElementSet X;
    for (std::size_t i = 0; i < orbits.size(); ++i)
      if (digit[i]) X.push_back(digit[i] == 1 ? orbits[i].first : orbits[i].second);
    fn(normalized(X));
    std::size_t i = 0;
    while (i < digit.size() && digit[i] == 2) digit[i++] = 0;
    if (i == digit.size()) return;
    ++digit[i];
  }
}

inline void for_each_subset(std::size_t n, Rank offset, const std::function<void(const ElementSet&)>& fn) {
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    ElementSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) s.push_back(static_cast<Rank>(i) + offset);
    fn(s);
  }
}

struct IffTally {
  std::size_t instances = 0;
  std::size_t dsrg_verdicts = 0;
  std::size_t discrepancies = 0;
  std::string first_discrepancy;

  void merge(const IffTally& o) {
    instances += o.instances;
    dsrg_verdicts += o.dsrg_verdicts;
    if (!discrepancies && o.discrepancies) first_discrepancy = o.first_discrepancy;
    discrepancies += o.discrepancies;
  }
};

inline std::string describe(const ElementSet& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

/// Compares one certificate against the oracle. A Dsrg verdict must match the
/// oracle's parameters exactly; a NotDsrg verdict must meet no proper DSRG
/// (thm3: none with its parameters).
inline void compare(IffTally& tally, const std::string& where, const std::string& rule,
                    const ExtensionSpec& G, const oracle::Table& R, const ConnectionSet& S) {
  CertifyOptions opts;
  opts.run_oracle = false;
  const Certificate c = certify(rule, G, S, std::nullopt, opts);
  if (c.verdict == Verdict::NotApplicable) return;
  ++tally.instances;
  const auto truth = oracle_params(R, S);
  bool ok = true;
  if (c.verdict == Verdict::Dsrg) {
    ++tally.dsrg_verdicts;
    ok = truth && c.params && *truth == *c.params;
  } else if (rule == "thm3") {
    const auto n = static_cast<std::int64_t>(G.base_order());
    ok = !truth || !(*truth == family_f1(n, 1));
  } else {
    ok = !truth || !truth->is_proper();
  }
  if (!ok) {
    if (!tally.discrepancies)
      tally.first_discrepancy = rule + " on " + where + " X=" + describe(S.X) + " Y=" + describe(S.Y) +
                                " verdict=" + to_string(c.verdict) +
                                " oracle=" + (truth ? to_string(*truth) : std::string("none"));
    ++tally.discrepancies;
  }
}

/// Runs a characterizing rule over every (X, Y) meeting its hypotheses.
inline IffTally iff_check(const std::string& rule, const NamedGroup& g) {
  IffTally tally;
  const auto& G = g.G;
  const oracle::Table R(reference(G));
  const auto& A = G.base();
  const auto n = A.order();
  if (rule == "thm2") {
    std::vector<ElementSet> free;
    for_each_f_free(G, [&](const ElementSet& X) { free.push_back(X); });
    for (const auto& X : free)
      for (const auto& Y : free)
        if (X.size() == Y.size() && !X.empty()) compare(tally, g.name, rule, G, R, ConnectionSet{X, Y});
  } else if (rule == "thm3") {
    if (n % 2 == 0) return tally;
    for_each_subset(n - 1, 1, [&](const ElementSet& X) {
      if (2 * X.size() + 1 != n) return;  // other sizes are rejected by the size condition alone
      for_each_subset(n, 0, [&](const ElementSet& Y) { compare(tally, g.name, rule, G, R, ConnectionSet{X, Y}); });
    });
  } else if (rule == "thm4") {
    for_each_f_free(G, [&](const ElementSet& X) {
      const ElementSet all = full_set(n);
      const ElementSet Y1 = set_difference(all, X);
      const ElementSet Y2 = set_difference(all, image(G.f(), X));
      compare(tally, g.name, rule, G, R, ConnectionSet{X, Y1});
      if (Y2 != Y1) compare(tally, g.name, rule, G, R, ConnectionSet{X, Y2});
    });
  } else if (rule == "thm5") {
    for_each_f_free(G, [&](const ElementSet& X) {
      compare(tally, g.name, rule, G, R, ConnectionSet{X, set_union(X, ElementSet{0})});
    });
  }
  return tally;
}

/// Same as iff_check for thm3 but over every (X, Y), including the sizes the
/// size condition rejects; used where the search space is small.
inline IffTally thm3_full_check(const NamedGroup& g) {
  IffTally tally;
  const auto& G = g.G;
  const oracle::Table R(reference(G));
  const auto n = G.base_order();
  if (n % 2 == 0) return tally;
  for_each_subset(n - 1, 1, [&](const ElementSet& X) {
    for_each_subset(n, 0, [&](const ElementSet& Y) { compare(tally, g.name, "thm3", G, R, ConnectionSet{X, Y}); });
  });
  return tally;
}

}  // namespace testsupport
