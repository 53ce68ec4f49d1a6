#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsrgkit/abelian.hpp"
#include "dsrgkit/config.hpp"
#include "dsrgkit/dsrg.hpp"
#include "dsrgkit/extension.hpp"

namespace dsrgkit {

enum class Verdict {
  Dsrg,           // the rule's conditions hold: a DSRG with `params`
  NotDsrg,        // the rule excludes a DSRG (for screens: with the declared parameters)
  NotApplicable,  // the rule's hypotheses fail
  Undecided,      // a necessary-condition screen passed, or a sufficient rule failed
};

const char* to_string(Verdict v);

struct Condition {
  std::string name;
  bool holds = false;
  std::string witness;
  /// Reported for reference only; does not enter the verdict.
  bool informational = false;
};

struct Certificate {
  std::string rule;
  bool applicable = false;
  std::vector<Condition> conditions;
  Verdict verdict = Verdict::NotApplicable;
  std::optional<DsrgParams> params;
  /// nullopt when the oracle was not run or the verdict makes no claim.
  std::optional<bool> oracle_agrees;
  std::vector<std::string> notes;

  const Condition* find(std::string_view name) const;
  bool holds(std::string_view name) const;
};

struct CertifyOptions {
  Tolerance tolerance{};
  Limits limits = Limits::from_environment();
  bool run_oracle = true;
};

// Closed-form parameter families, indexed by n = |A| and ℓ = |B|.
DsrgParams family_f1(std::int64_t n, std::int64_t ell);  // (2n, n−ℓ, (n−ℓ)/2, (n−3ℓ)/2, (n−ℓ)/2)
DsrgParams family_f2(std::int64_t n, std::int64_t ell);  // (2n, n, (n+ℓ)/2, (n−ℓ)/2, (n+ℓ)/2)
DsrgParams family_f3(std::int64_t n, std::int64_t ell);  // (2n, n, n/2+ℓ, n/2−ℓ, n/2+ℓ)

/// Necessary conditions for a DSRG with declared parameters: X ⊔ f(X) inverse
/// closed and integral with orbit multiplicities in {0,1,2}, and the
/// character conditions that follow from the A-side equations. Character
/// comparisons are numeric.
Certificate thm1_screen(const ExtensionSpec& G, const ConnectionSet& S, const DsrgParams& params,
                        const CertifyOptions& opts = {});

/// The dichotomy every proper DSRG satisfies: some non-trivial χ(Ȳ) = 0, or
/// X ⊔ f(X) = A∖{e} with |Y| inside (n ± √(2n−1))/2. Rejects Y ∈ {{e}, A∖{e}}
/// outright for n ≥ 5.
Certificate cor2_screen(const ExtensionSpec& G, const ConnectionSet& S,
                        const CertifyOptions& opts = {});

/// X ∩ f(X) = Y ∩ f(Y) = ∅, |X| = |Y|: DSRG iff B = A∖(X∪f(X)) is a subgroup,
/// X and Y are unions of B-cosets, X∪f(X) = Y∪f(Y) and X̄f(X̄) = Ȳf(Ȳ).
Certificate thm2_certify(const ExtensionSpec& G, const ConnectionSet& S,
                         const CertifyOptions& opts = {});

/// The Y ∈ {X, f(X)} special case of thm2: B a subgroup and X a coset union.
Certificate cor3_certify(const ExtensionSpec& G, const ConnectionSet& S,
                         const CertifyOptions& opts = {});

/// n odd: a DSRG with (2n, n−1, (n−1)/2, (n−3)/2, (n−1)/2) iff |X| = |Y| = (n−1)/2,
/// X ⊔ f(X) = A∖{e}, α = e and X̄f(X̄) = Ȳf(Ȳ).
Certificate thm3_certify(const ExtensionSpec& G, const ConnectionSet& S,
                         const CertifyOptions& opts = {});

/// X ∩ f(X) = ∅ and Y ∈ {A∖X, A∖f(X)}: DSRG iff B is a subgroup and X a coset union.
Certificate thm4_certify(const ExtensionSpec& G, const ConnectionSet& S,
                         const CertifyOptions& opts = {});

/// X ∩ f(X) = ∅ and Y = X ∪ {e}.
Certificate thm5_certify(const ExtensionSpec& G, const ElementSet& X, const CertifyOptions& opts = {});

/// Y = X, n even: sufficient conditions for (2n, n, n/2+ℓ, n/2−ℓ, n/2+ℓ).
Certificate thm6_certify(const ExtensionSpec& G, const ElementSet& X, const CertifyOptions& opts = {});

/// Dispatch by rule id: thm1 (needs params), cor2, thm2, cor3, thm3, thm4, thm5, thm6.
Certificate certify(std::string_view rule, const ExtensionSpec& G, const ConnectionSet& S,
                    const std::optional<DsrgParams>& params, const CertifyOptions& opts = {});

struct SubgroupCert {
  Subgroup B;
  std::size_t ell = 0;
  bool f_stable = false;
  bool alpha_in_B = false;
};

/// Throws ValidationError if `elements` is not a subgroup.
SubgroupCert certify_subgroup(const ExtensionSpec& G, const ElementSet& elements);

struct Construction {
  ConnectionSet set;
  Certificate certificate;
};

enum class YMode { SameAsX, ImageOfX };             // Y = X or Y = f(X)
enum class ComplementOf { X, ImageOfX };            // Y = A∖X or Y = A∖f(X)

/// X = one coset from each f-swapped pair (choice[i] picks the second member of
/// pair i). Throws InfeasibleError for an f-fixed non-B coset, ValidationError
/// if B is not f-stable or α ∉ B.
Construction cor3_construct(const ExtensionSpec& G, const ElementSet& B, const std::vector<bool>& choice,
                            YMode mode, const CertifyOptions& opts = {});
std::vector<Construction> cor3_construct_all(const ExtensionSpec& G, const ElementSet& B,
                                             const CertifyOptions& opts = {});

Construction thm4_construct(const ExtensionSpec& G, const ElementSet& B, const std::vector<bool>& choice,
                            ComplementOf mode = ComplementOf::X, const CertifyOptions& opts = {});
std::vector<Construction> thm4_construct_all(const ExtensionSpec& G, const ElementSet& B,
                                             const CertifyOptions& opts = {});

/// Searches unions of non-B cosets meeting the thm6 conditions (with the given
/// a, or any a). Results are in lexicographic order of X.
std::vector<Construction> thm6_construct_all(const ExtensionSpec& G, const ElementSet& B,
                                             std::optional<Rank> a = std::nullopt,
                                             const CertifyOptions& opts = {});
/// First solution in canonical order, or nullopt if infeasible.
std::optional<Construction> thm6_construct(const ExtensionSpec& G, const ElementSet& B,
                                           std::optional<Rank> a = std::nullopt,
                                           const CertifyOptions& opts = {});

/// All T ⊆ Z_n∖{0} with T ∩ (−T) = ∅ and either T ∪ (−T) = Z_n∖{0}, or
/// T ∪ (−T) = Z_n∖{0, n/2} and T = n/2 − T; each as X = T, Y = T ∪ {0} over
/// the dihedral group of order 2n, certified.
std::vector<Construction> cor5_enumerate(int n, const CertifyOptions& opts = {});

struct CirculantSrgClass {
  enum class Kind { CompleteMultipartite, DisjointCliques, PaleyParameters, Inconsistent };
  Kind kind = Kind::Inconsistent;
  std::size_t parts = 0;      // t in K_{t×m}, or number of cliques
  std::size_t part_size = 0;  // m
  DsrgParams srg;             // (n, k, μ, λ, k)
};

const char* to_string(CirculantSrgClass::Kind k);

/// Classifies a strongly regular circulant Cay(Z_n, S). Throws
/// PreconditionError if S ≠ −S, 0 ∈ S, or the graph is not strongly regular.
CirculantSrgClass lemma7_classify(int n, const ElementSet& S);

}  // namespace dsrgkit
