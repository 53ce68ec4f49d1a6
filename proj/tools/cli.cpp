#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "dsrgkit/constructions.hpp"
#include "dsrgkit/dsrg.hpp"
#include "dsrgkit/errors.hpp"
#include "dsrgkit/json_io.hpp"
#include "dsrgkit/search.hpp"
#include "dsrgkit/spectra.hpp"

namespace dsrgkit::cli {

namespace {

struct Options {
  std::string group;
  std::string set;
  std::string out;
  unsigned workers = 0;
  std::optional<double> tolerance;

  std::string rule;
  std::string params;
  int n = 0;
  std::string subgroup;
  std::string choice;
  std::string y_mode = "x";
  std::string a;
  bool all = false;

  std::string mode = "brute";
  std::optional<std::size_t> ell;
  bool summary = false;
  bool no_screens = false;
  bool cross_check = false;
  std::optional<std::uint64_t> max_candidates;

  std::string format = "json";
  std::string of = "g";
};

// A group argument is a JSON file, or "dihedral:N" / "dicyclic:N".
ExtensionSpec load_group(const std::string& arg, const Limits& limits) {
  if (arg.empty()) throw InputError("--group is required");
  auto shorthand = [&](const std::string& prefix) -> std::optional<int> {
    if (arg.rfind(prefix, 0) != 0) return std::nullopt;
    const std::string num = arg.substr(prefix.size());
    if (num.empty() || !std::all_of(num.begin(), num.end(), ::isdigit))
      throw InputError("bad group shorthand '" + arg + "'");
    return std::stoi(num);
  };
  if (auto n = shorthand("dihedral:")) return ExtensionSpec::dihedral(*n);
  if (auto n = shorthand("dicyclic:")) return ExtensionSpec::dicyclic(*n);
  return extension_from_json(read_json_file(arg), limits);
}

ConnectionSet load_set(const ExtensionSpec& G, const std::string& path) {
  if (path.empty()) throw InputError("--set is required");
  return set_from_json(G.base(), read_json_file(path));
}

// Inline JSON value (for --subgroup, --a, --params), or a file holding one.
Json inline_json(const std::string& text, const std::string& flag) {
  std::ifstream probe(text);
  if (probe.good() && !text.empty() && text.front() != '[' && text.front() != '{') return read_json_file(text);
  return parse_json(text, flag);
}

std::vector<bool> parse_choice(const std::string& s) {
  std::vector<bool> out;
  for (char c : s) {
    if (c != '0' && c != '1') throw InputError("--choice takes a string of 0 and 1");
    out.push_back(c == '1');
  }
  return out;
}

Json config_echo(const std::string& command, const Options& o, const Limits& limits, const Tolerance& tol) {
  Json c{{"command", command}};
  if (!o.group.empty()) c["group"] = o.group;
  if (!o.set.empty()) c["set"] = o.set;
  if (!o.rule.empty()) c["rule"] = o.rule;
  if (command == "census") {
    c["mode"] = o.mode;
    c["ell"] = o.ell ? Json(*o.ell) : Json(nullptr);
    c["screens"] = !o.no_screens;
    c["cross_check"] = o.cross_check;
    c["workers"] = o.workers ? o.workers : std::max(1U, std::thread::hardware_concurrency());
  }
  c["tolerance"] = Json{{"character", tol.character}, {"grouping", tol.grouping}};
  c["limits"] = Json{{"max_order", limits.max_order},
                     {"oracle_max_vertices", limits.oracle_max_vertices},
                     {"spectrum_max_vertices", limits.spectrum_max_vertices},
                     {"census_max_candidates", limits.census_max_candidates}};
  return c;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InputError("cannot write " + o.out);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json construction_json(const AbelianGroup& A, const Construction& c) {
  Json o = to_json(A, c.set);
  o["certificate"] = to_json(c.certificate);
  return o;
}

int cmd_verify(const Options& o, std::ostream& out, const Limits& limits, const Tolerance& tol) {
  const ExtensionSpec G = load_group(o.group, limits);
  const ConnectionSet S = load_set(G, o.set);
  Json report{{"config", config_echo("verify", o, limits, tol)}};
  report["order"] = G.order();
  report["degree"] = S.size();

  bool holds = false;
  std::optional<DsrgParams> params;
  if (!o.params.empty()) {
    const DsrgParams declared = params_from_json(inline_json(o.params, "--params"));
    const auto v = check_declared_params(G, S, declared);
    holds = !v.has_value();
    if (holds) params = declared;
    else report["violation"] = to_json(G, *v);
  } else if (is_degenerate(G, S)) {
    report["degenerate"] = S.size() == 0 ? "empty connection set" : "complete connection set";
  } else {
    const Inference inf = infer_dsrg_params(G, S);
    if (const auto* p = std::get_if<DsrgParams>(&inf)) {
      holds = true;
      params = *p;
    } else {
      report["violation"] = to_json(G, std::get<Violation>(inf));
    }
  }
  report["params"] = params ? to_json(*params) : Json(nullptr);
  report["kind"] = params ? Json(to_string(kind_of(*params))) : Json(nullptr);
  const bool proper = holds && params->is_proper();
  report["dsrg"] = proper;
  if (G.order() <= limits.oracle_max_vertices) {
    const auto oracle = infer_params_matrix(G, S, limits);
    if (!o.params.empty())
      report["oracle_agrees"] = (oracle == params_from_json(inline_json(o.params, "--params"))) == holds;
    else
      report["oracle_agrees"] = oracle == params;
  }
  emit(o, out, dump(report));
  return proper ? kOk : kNegative;
}

int cmd_certify(const Options& o, std::ostream& out, const Limits& limits, const Tolerance& tol) {
  const ExtensionSpec G = load_group(o.group, limits);
  const ConnectionSet S = load_set(G, o.set);
  std::optional<DsrgParams> declared;
  if (!o.params.empty()) declared = params_from_json(inline_json(o.params, "--params"));
  CertifyOptions opts{tol, limits, true};
  const Certificate c = certify(o.rule, G, S, declared, opts);
  Json report{{"config", config_echo("certify", o, limits, tol)}};
  report.update(to_json(c));
  emit(o, out, dump(report));
  return kOk;
}

int cmd_construct(const Options& o, std::ostream& out, const Limits& limits, const Tolerance& tol) {
  CertifyOptions opts{tol, limits, true};
  Json report{{"config", config_echo("construct", o, limits, tol)}};
  std::vector<Construction> built;
  std::optional<ExtensionSpec> G;

  if (o.rule == "cor5") {
    if (o.n < 2) throw InputError("--n must be at least 2 for cor5");
    G = ExtensionSpec::dihedral(o.n);
    built = cor5_enumerate(o.n, opts);
  } else {
    G = load_group(o.group, limits);
    if (o.subgroup.empty()) throw InputError("--subgroup is required for " + o.rule);
    const ElementSet B = elements_from_json(G->base(), inline_json(o.subgroup, "--subgroup"), "subgroup");
    try {
      if (o.rule == "cor3" || o.rule == "thm4") {
        if (o.all) {
          built = o.rule == "cor3" ? cor3_construct_all(*G, B, opts) : thm4_construct_all(*G, B, opts);
        } else {
          const auto choice = parse_choice(o.choice);
          if (o.y_mode != "x" && o.y_mode != "fx") throw InputError("--y-mode takes x or fx");
          if (o.rule == "cor3")
            built.push_back(cor3_construct(*G, B, choice, o.y_mode == "x" ? YMode::SameAsX : YMode::ImageOfX, opts));
          else
            built.push_back(thm4_construct(*G, B, choice, o.y_mode == "x" ? ComplementOf::X : ComplementOf::ImageOfX, opts));
        }
      } else if (o.rule == "thm6") {
        std::optional<Rank> a;
        if (!o.a.empty()) a = G->base().rank(element_from_json(G->base(), inline_json(o.a, "--a"), "a"));
        if (o.all) built = thm6_construct_all(*G, B, a, opts);
        else if (auto c = thm6_construct(*G, B, a, opts)) built.push_back(std::move(*c));
        else throw InfeasibleError("no coset union meets the conditions");
      } else {
        throw InputError("unknown construct rule '" + o.rule + "'");
      }
    } catch (const InfeasibleError& e) {
      report["infeasible"] = e.what();
      report["constructions"] = Json::array();
      emit(o, out, dump(report));
      return kNegative;
    }
  }
  report["extension"] = to_json(*G);
  Json list = Json::array();
  for (const auto& c : built) list.push_back(construction_json(G->base(), c));
  report["constructions"] = list;
  emit(o, out, dump(report));
  return built.empty() ? kNegative : kOk;
}

int cmd_census(const Options& o, std::ostream& out, const Limits& limits, const Tolerance& tol) {
  CensusQuery q{load_group(o.group, limits)};
  q.limits = limits;
  q.tolerance = tol;
  q.workers = o.workers ? o.workers : std::max(1U, std::thread::hardware_concurrency());
  q.screens = !o.no_screens;
  q.brute_cross_check = o.cross_check;
  q.ell = o.ell;
  static const std::map<std::string, CensusQuery::Mode> modes{
      {"brute", CensusQuery::Mode::Brute},          {"thm2", CensusQuery::Mode::Thm2Hypotheses},
      {"thm5", CensusQuery::Mode::Thm5Hypotheses},  {"cor3", CensusQuery::Mode::Cor3Hypotheses},
      {"thm4", CensusQuery::Mode::Thm4Hypotheses},  {"thm6", CensusQuery::Mode::Thm6Hypotheses},
  };
  if (o.mode == "f1" || o.mode == "f2" || o.mode == "f3") {
    q.mode = CensusQuery::Mode::Family;
    q.family = o.mode == "f1" ? CensusQuery::Family::F1
               : o.mode == "f2" ? CensusQuery::Family::F2
                                : CensusQuery::Family::F3;
  } else if (auto it = modes.find(o.mode); it != modes.end()) {
    q.mode = it->second;
  } else {
    throw InputError("unknown census mode '" + o.mode + "'");
  }
  const CensusResult r = run_census(q);
  if (o.summary) {
    emit(o, out, census_summary_tsv(r));
    return kOk;
  }
  Json report{{"config", config_echo("census", o, limits, tol)}};
  report["extension"] = to_json(q.spec);
  report.update(to_json(q.spec.base(), r));
  emit(o, out, dump(report));
  return kOk;
}

int cmd_spectrum(const Options& o, std::ostream& out, const Limits& limits, const Tolerance& tol) {
  const ExtensionSpec G = load_group(o.group, limits);
  const ConnectionSet S = load_set(G, o.set);
  SpectrumReport r;
  if (o.of == "g") {
    r = full_spectrum(G, group_elements(G, S), limits, tol);
  } else if (o.of == "xfx") {
    const AlgElem X = from_set(G.base(), S.X);
    r = cayley_eigenvalues_abelian(G.base(), X + f_image(G.f(), X), tol);
  } else {
    throw InputError("--of takes g or xfx");
  }
  Json report{{"config", config_echo("spectrum", o, limits, tol)}};
  report.update(to_json(r));
  emit(o, out, dump(report));
  return kOk;
}

std::string vertex_label(const ExtensionSpec& G, Rank u) {
  std::string s = to_string(G.base().unrank(G.base_part(u)));
  if (G.beta_part(u)) s += "b";
  return s;
}

int cmd_export(const Options& o, std::ostream& out, const Limits& limits, const Tolerance&) {
  const ExtensionSpec G = load_group(o.group, limits);
  const ConnectionSet S = load_set(G, o.set);
  if (o.format != "dot" && o.format != "json" && o.format != "matrix")
    throw InputError("unknown export format '" + o.format + "'");
  std::ostringstream os;
  if (o.format == "json") {
    Json j{{"extension", to_json(G)}};
    j.update(to_json(G.base(), S));
    os << dump(j);
  } else {
    const Eigen::MatrixXi M = build_cayley(G, S, limits);
    if (o.format == "matrix") {
      for (Eigen::Index x = 0; x < M.rows(); ++x) {
        for (Eigen::Index y = 0; y < M.cols(); ++y) os << (y ? " " : "") << M(x, y);
        os << '\n';
      }
    } else {
      os << "digraph cayley {\n";
      for (Rank u = 0; u < G.order(); ++u) os << "  \"" << vertex_label(G, u) << "\";\n";
      for (Eigen::Index x = 0; x < M.rows(); ++x)
        for (Eigen::Index y = 0; y < M.cols(); ++y)
          if (M(x, y))
            os << "  \"" << vertex_label(G, static_cast<Rank>(x)) << "\" -> \""
               << vertex_label(G, static_cast<Rank>(y)) << "\";\n";
      os << "}\n";
    }
  }
  emit(o, out, os.str());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Directed strongly regular Cayley graphs over index-2 extensions of abelian groups", "dsrg"};
  app.require_subcommand(1);
  Options o;

  auto shared = [&](CLI::App* sub, bool needs_set) {
    sub->add_option("--group", o.group, "extension JSON file, or dihedral:N / dicyclic:N");
    if (needs_set) sub->add_option("--set", o.set, "connection set JSON file");
    sub->add_option("--out", o.out, "write the report here instead of stdout");
    sub->add_option("--workers", o.workers, "census worker threads (default: hardware threads)");
    sub->add_option("--tolerance", o.tolerance, "character tolerance before scaling by |A| (default 1e-8)");
  };

  auto* verify = app.add_subcommand("verify", "check whether Cay(G, S) is a DSRG");
  shared(verify, true);
  verify->add_option("--params", o.params, "declared parameters as JSON [n,k,mu,lambda,t]");

  auto* certify_cmd = app.add_subcommand("certify", "run one rule's certifier or screen");
  shared(certify_cmd, true);
  certify_cmd->add_option("--rule", o.rule, "thm1|cor2|thm2|cor3|thm3|thm4|thm5|thm6")->required();
  certify_cmd->add_option("--params", o.params, "declared parameters (thm1)");

  auto* construct = app.add_subcommand("construct", "build certified connection sets");
  shared(construct, false);
  construct->add_option("--rule", o.rule, "cor3|thm4|thm6|cor5")->required();
  construct->add_option("--n", o.n, "order of A for cor5");
  construct->add_option("--subgroup", o.subgroup, "B as a JSON element list");
  construct->add_option("--choice", o.choice, "one bit per f-paired coset orbit");
  construct->add_option("--y-mode", o.y_mode, "cor3: Y = X (x) or f(X) (fx); thm4: complement of X or f(X)");
  construct->add_option("--a", o.a, "thm6 translate element as JSON");
  construct->add_flag("--all", o.all, "enumerate every solution");

  auto* census = app.add_subcommand("census", "enumerate DSRG connection sets");
  shared(census, false);
  census->add_option("--mode", o.mode, "brute|thm2|thm5|cor3|thm4|thm6|f1|f2|f3");
  census->add_option("--ell", o.ell, "family filter on |B|");
  census->add_flag("--summary", o.summary, "print the parameter histogram as TSV");
  census->add_flag("--no-screens", o.no_screens, "run full inference on every candidate");
  census->add_flag("--cross-check", o.cross_check, "family modes: compare against brute force");
  census->add_option("--max-candidates", o.max_candidates, "census candidate cap (default 2^26)");

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of Cay(G, S) or of Cay(A, X + f(X))");
  shared(spectrum, true);
  spectrum->add_option("--of", o.of, "g or xfx");

  auto* export_cmd = app.add_subcommand("export", "write Cay(G, S) as DOT, JSON or a 0/1 matrix");
  shared(export_cmd, true);
  export_cmd->add_option("--format", o.format, "dot|json|matrix");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    Limits limits = Limits::from_environment();
    if (o.max_candidates) limits.census_max_candidates = *o.max_candidates;
    Tolerance tol;
    if (o.tolerance) {
      if (!(*o.tolerance > 0)) throw InputError("--tolerance must be positive");
      tol.character = *o.tolerance;
    }
    if (verify->parsed()) return cmd_verify(o, out, limits, tol);
    if (certify_cmd->parsed()) return cmd_certify(o, out, limits, tol);
    if (construct->parsed()) return cmd_construct(o, out, limits, tol);
    if (census->parsed()) return cmd_census(o, out, limits, tol);
    if (spectrum->parsed()) return cmd_spectrum(o, out, limits, tol);
    if (export_cmd->parsed()) return cmd_export(o, out, limits, tol);
  } catch (const CapError& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return kCapError;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kNegative;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace dsrgkit::cli
