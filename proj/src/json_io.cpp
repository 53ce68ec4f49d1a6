#include "dsrgkit/json_io.hpp"

#include <fstream>
#include <sstream>

#include "dsrgkit/errors.hpp"

namespace dsrgkit {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw InputError("field '" + field + "': " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) field_error(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

int as_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < INT32_MIN || v > INT32_MAX) field_error(field, "integer out of range");
  return static_cast<int>(v);
}

std::int64_t as_int64(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "expected an integer");
  return j.get<std::int64_t>();
}

// Line and column of a byte offset, both 1-based.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                     e.what() + ")");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

AbelianGroup group_from_json(const Json& j, const Limits& limits) {
  const Json& factors = member(j, "factors", "group");
  if (!factors.is_array()) field_error("group.factors", "expected an array");
  std::vector<int> ds;
  for (std::size_t i = 0; i < factors.size(); ++i)
    ds.push_back(as_int(factors[i], "group.factors[" + std::to_string(i) + "]"));
  return AbelianGroup::make(std::move(ds), limits);
}

GroupVector element_from_json(const AbelianGroup& A, const Json& j, const std::string& field) {
  if (!j.is_array()) field_error(field, "expected an array of " + std::to_string(A.dimension()) + " integers");
  if (j.size() != A.dimension())
    field_error(field, "expected " + std::to_string(A.dimension()) + " coordinates, got " + std::to_string(j.size()));
  GroupVector x;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int v = as_int(j[i], field + "[" + std::to_string(i) + "]");
    const int d = A.factors()[i];
    x.coords.push_back(((v % d) + d) % d);
  }
  return x;
}

Involution involution_from_json(const AbelianGroup& A, const Json& j) {
  const Json& images = member(j, "images", "f");
  if (!images.is_array()) field_error("f.images", "expected an array");
  std::vector<GroupVector> out;
  for (std::size_t i = 0; i < images.size(); ++i)
    out.push_back(element_from_json(A, images[i], "f.images[" + std::to_string(i) + "]"));
  return Involution::make(A, std::move(out));
}

ExtensionSpec extension_from_json(const Json& jin, const Limits& limits) {
  const Json& j = jin.is_object() && jin.contains("extension") ? jin["extension"] : jin;
  AbelianGroup A = group_from_json(member(j, "group", ""), limits);
  Involution f = involution_from_json(A, member(j, "f", ""));
  const GroupVector alpha = element_from_json(A, member(j, "alpha", ""), "alpha");
  return ExtensionSpec::make(std::move(A), std::move(f), alpha);
}

ElementSet elements_from_json(const AbelianGroup& A, const Json& j, const std::string& field) {
  if (!j.is_array()) field_error(field, "expected an array of elements");
  ElementSet out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(A.rank(element_from_json(A, j[i], field + "[" + std::to_string(i) + "]")));
  return normalized(std::move(out));
}

ConnectionSet set_from_json(const AbelianGroup& A, const Json& j) {
  ElementSet X = elements_from_json(A, member(j, "X", ""), "X");
  ElementSet Y = elements_from_json(A, member(j, "Y", ""), "Y");
  return make_connection_set(A, std::move(X), std::move(Y));
}

AlgElem algelem_from_json(const ExtensionSpec& G, const Json& j) {
  const Json& carrier = member(j, "carrier", "");
  if (!carrier.is_string() || (carrier != "A" && carrier != "G")) field_error("carrier", "expected \"A\" or \"G\"");
  const bool over_g = carrier == "G";
  const AbelianGroup& A = G.base();
  AlgElem x = zero_element(over_g ? Carrier::G : Carrier::A, over_g ? G.order() : A.order());
  const Json& coeffs = member(j, "coeffs", "");
  if (!coeffs.is_array()) field_error("coeffs", "expected an array");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::string f = "coeffs[" + std::to_string(i) + "]";
    const Json& entry = coeffs[i];
    if (!entry.is_array() || entry.size() != 2) field_error(f, "expected [element, coefficient]");
    Rank r;
    if (over_g) {
      const Json& e = entry[0];
      if (!e.is_array() || e.size() != A.dimension() + 1)
        field_error(f + "[0]", "expected the A-vector followed by the beta flag");
      const int beta = as_int(e.back(), f + "[0].beta");
      if (beta != 0 && beta != 1) field_error(f + "[0].beta", "expected 0 or 1");
      const Json head(e.begin(), e.end() - 1);
      r = G.embed(A.rank(element_from_json(A, head, f + "[0]")), beta);
    } else {
      r = A.rank(element_from_json(A, entry[0], f + "[0]"));
    }
    x[r] += as_int64(entry[1], f + "[1]");
  }
  return x;
}

DsrgParams params_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 5) field_error("params", "expected [n, k, mu, lambda, t]");
    return {as_int64(j[0], "params[0]"), as_int64(j[1], "params[1]"), as_int64(j[2], "params[2]"),
            as_int64(j[3], "params[3]"), as_int64(j[4], "params[4]")};
  }
  return {as_int64(member(j, "n", "params"), "params.n"), as_int64(member(j, "k", "params"), "params.k"),
          as_int64(member(j, "mu", "params"), "params.mu"),
          as_int64(member(j, "lambda", "params"), "params.lambda"),
          as_int64(member(j, "t", "params"), "params.t")};
}

Json to_json(const AbelianGroup& A) { return Json{{"factors", A.factors()}}; }

Json to_json(const GroupVector& x) { return Json(x.coords); }

Json to_json(const Involution& f) {
  Json images = Json::array();
  for (const auto& v : f.images()) images.push_back(to_json(v));
  return Json{{"images", images}};
}

Json to_json(const ExtensionSpec& G) {
  return Json{{"group", to_json(G.base())}, {"f", to_json(G.f())}, {"alpha", to_json(G.alpha_vector())}};
}

Json to_json(const AbelianGroup& A, const ElementSet& s) {
  Json out = Json::array();
  for (Rank r : s) out.push_back(to_json(A.unrank(r)));
  return out;
}

Json to_json(const AbelianGroup& A, const ConnectionSet& S) {
  return Json{{"X", to_json(A, S.X)}, {"Y", to_json(A, S.Y)}};
}

Json g_element_json(const ExtensionSpec& G, Rank u) {
  Json out = to_json(G.base().unrank(G.base_part(u)));
  out.push_back(G.beta_part(u));
  return out;
}

Json to_json(const ExtensionSpec& G, const AlgElem& x) {
  Json coeffs = Json::array();
  for (Rank r : x.support()) {
    const Json e = x.carrier() == Carrier::G ? g_element_json(G, r) : to_json(G.base().unrank(r));
    coeffs.push_back(Json::array({e, x[r]}));
  }
  return Json{{"carrier", to_string(x.carrier())}, {"coeffs", coeffs}};
}

Json to_json(const DsrgParams& p) {
  return Json{{"n", p.n}, {"k", p.k}, {"mu", p.mu}, {"lambda", p.lambda}, {"t", p.t}};
}

Json to_json(const ExtensionSpec& G, const Violation& v) {
  return Json{{"kind", to_string(v.kind)},
              {"witness", g_element_json(G, v.witness)},
              {"expected", v.expected},
              {"actual", v.actual}};
}

Json to_json(const Certificate& c) {
  Json conds = Json::array();
  for (const auto& k : c.conditions) {
    Json o{{"name", k.name}, {"holds", k.holds}};
    if (!k.witness.empty()) o["witness"] = k.witness;
    if (k.informational) o["informational"] = true;
    conds.push_back(std::move(o));
  }
  Json out{{"rule", c.rule}, {"applicable", c.applicable}, {"verdict", to_string(c.verdict)}, {"conditions", conds}};
  out["params"] = c.params ? to_json(*c.params) : Json(nullptr);
  out["oracle_agrees"] = c.oracle_agrees ? Json(*c.oracle_agrees) : Json(nullptr);
  if (!c.notes.empty()) out["notes"] = c.notes;
  return out;
}

Json to_json(const SpectrumReport& r) {
  Json ev = Json::array();
  for (const auto& c : r.grouped) ev.push_back(Json::array({c.value.real(), c.value.imag(), c.multiplicity}));
  Json out{{"eigenvalues", ev}, {"all_real", r.all_real}, {"all_integral", r.all_integral}};
  out["second_largest"] = r.second_largest ? Json(*r.second_largest) : Json(nullptr);
  return out;
}

Json to_json(const AbelianGroup& A, const CensusResult& r) {
  Json hits = Json::array();
  for (const auto& h : r.hits) {
    Json o = to_json(A, h.set);
    o["params"] = to_json(h.params);
    o["rules"] = h.rules;
    hits.push_back(std::move(o));
  }
  Json counts = Json::array();
  for (const auto& [p, c] : r.counts) counts.push_back(Json{{"params", to_json(p)}, {"count", c}});
  Json out{{"hits", hits}, {"counts", counts}, {"candidates", r.candidates}, {"screened_out", r.screened_out}};
  if (r.degenerate) out["degenerate"] = *r.degenerate;
  if (!r.extra_brute_hits.empty()) {
    Json extra = Json::array();
    for (const auto& h : r.extra_brute_hits) {
      Json o = to_json(A, h.set);
      o["params"] = to_json(h.params);
      extra.push_back(std::move(o));
    }
    out["extra_brute_hits"] = extra;
  }
  return out;
}

std::string census_summary_tsv(const CensusResult& r) {
  std::ostringstream os;
  os << "n\tk\tmu\tlambda\tt\tcount\n";
  for (const auto& [p, c] : r.counts)
    os << p.n << '\t' << p.k << '\t' << p.mu << '\t' << p.lambda << '\t' << p.t << '\t' << c << '\n';
  return os.str();
}

}  // namespace dsrgkit
