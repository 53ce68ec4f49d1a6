#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsrgkit/abelian.hpp"
#include "dsrgkit/config.hpp"
#include "dsrgkit/dsrg.hpp"
#include "dsrgkit/extension.hpp"

namespace dsrgkit {

/// All subgroups of A, ordered by size and then by element list.
std::vector<Subgroup> enumerate_subgroups(const AbelianGroup& A);

struct CensusQuery {
  /// Which (X, Y) pairs are enumerated. The hypothesis modes restrict brute
  /// force to the shapes the constructive rules cover.
  enum class Mode {
    Brute,           // all X ⊆ A∖{e}, Y ⊆ A
    Thm2Hypotheses,  // X∩f(X) = Y∩f(Y) = ∅, |X| = |Y|
    Thm5Hypotheses,  // X∩f(X) = ∅, Y = X∪{e}
    Cor3Hypotheses,  // X∩f(X) = ∅, Y ∈ {X, f(X)}
    Thm4Hypotheses,  // X∩f(X) = ∅, Y ∈ {A∖X, A∖f(X)}
    Thm6Hypotheses,  // Y = X
    Family,          // constructive search, see family_search
  };
  enum class Family { F1, F2, F3 };

  explicit CensusQuery(ExtensionSpec s) : spec(std::move(s)) {}

  ExtensionSpec spec;
  Mode mode = Mode::Brute;
  Family family = Family::F1;
  std::optional<std::size_t> ell;  // family filter on |B|
  unsigned workers = 1;
  bool screens = true;
  bool brute_cross_check = false;  // family mode only
  Tolerance tolerance{};
  Limits limits = Limits::from_environment();
};

struct CensusHit {
  ConnectionSet set;
  DsrgParams params;
  /// Rule ids whose certifier returns a DSRG verdict for this set.
  std::vector<std::string> rules;

  friend bool operator==(const CensusHit&, const CensusHit&) = default;
};

struct CensusResult {
  std::vector<CensusHit> hits;  // proper DSRGs (0 < t < k), sorted by (X, Y)
  std::map<DsrgParams, std::size_t> counts;
  std::uint64_t candidates = 0;
  std::uint64_t screened_out = 0;
  /// Counts of "srg" and "doubly_regular_tournament" sets; filled only when
  /// no screen could have removed them.
  std::optional<std::map<std::string, std::size_t>> degenerate;
  /// Family mode with cross-check: brute-force hits of the family's shape and
  /// parameters that construction did not produce.
  std::vector<CensusHit> extra_brute_hits;
  double elapsed_seconds = 0.0;
};

/// Number of (X, Y) pairs a hypothesis mode enumerates.
std::uint64_t census_candidate_count(const ExtensionSpec& G, CensusQuery::Mode mode);

/// Exhaustive census over the query's mode. Throws CapError when the
/// candidate count exceeds limits.census_max_candidates; the message states
/// the required cap.
CensusResult brute_census(const CensusQuery& query);

/// Constructive census of one parameter family: subgroups B (of order ℓ when
/// given), then coset selections under the matching constructor's hypotheses.
CensusResult family_search(const CensusQuery& query);

/// Dispatches on query.mode.
CensusResult run_census(const CensusQuery& query);

const char* to_string(CensusQuery::Mode m);
const char* to_string(CensusQuery::Family f);

}  // namespace dsrgkit
