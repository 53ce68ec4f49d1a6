#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "dsrgkit/abelian.hpp"
#include "dsrgkit/config.hpp"
#include "dsrgkit/constructions.hpp"
#include "dsrgkit/dsrg.hpp"
#include "dsrgkit/extension.hpp"
#include "dsrgkit/group_algebra.hpp"
#include "dsrgkit/search.hpp"
#include "dsrgkit/spectra.hpp"

namespace dsrgkit {

/// Insertion-ordered, so serialized output follows the order fields are written.
using Json = nlohmann::ordered_json;

/// Parses text; syntax errors become InputError with line and column.
Json parse_json(std::string_view text, const std::string& source = "<input>");
/// Reads and parses a file; unreadable files are InputErrors.
Json read_json_file(const std::string& path);

// Readers throw InputError naming the offending field ("X[2]", "group.factors").
AbelianGroup group_from_json(const Json& j, const Limits& limits = Limits::from_environment());
GroupVector element_from_json(const AbelianGroup& A, const Json& j, const std::string& field = "element");
Involution involution_from_json(const AbelianGroup& A, const Json& j);
/// {"group":..., "f":..., "alpha":...}, optionally wrapped as {"extension": {...}}
/// so that exported set files can be fed back as group files.
ExtensionSpec extension_from_json(const Json& j, const Limits& limits = Limits::from_environment());
/// {"X":[...], "Y":[...]}; other keys are ignored.
ConnectionSet set_from_json(const AbelianGroup& A, const Json& j);
/// G elements are written as the A-vector followed by the β flag.
AlgElem algelem_from_json(const ExtensionSpec& G, const Json& j);
/// {"n","k","mu","lambda","t"} or the array [n,k,mu,lambda,t].
DsrgParams params_from_json(const Json& j);
ElementSet elements_from_json(const AbelianGroup& A, const Json& j, const std::string& field);

Json to_json(const AbelianGroup& A);
Json to_json(const GroupVector& x);
Json to_json(const Involution& f);
Json to_json(const ExtensionSpec& G);
Json to_json(const AbelianGroup& A, const ElementSet& s);
Json to_json(const AbelianGroup& A, const ConnectionSet& S);
Json to_json(const ExtensionSpec& G, const AlgElem& x);
Json to_json(const DsrgParams& p);
Json to_json(const ExtensionSpec& G, const Violation& v);
/// A G element as its A-vector followed by the β flag.
Json g_element_json(const ExtensionSpec& G, Rank u);
Json to_json(const Certificate& c);
Json to_json(const SpectrumReport& r);
/// Hit list and parameter counts; timings are left out so output is byte-stable.
Json to_json(const AbelianGroup& A, const CensusResult& r);

/// Parameter-tuple histogram, one "n k mu lambda t count" line per tuple.
std::string census_summary_tsv(const CensusResult& r);

}  // namespace dsrgkit
