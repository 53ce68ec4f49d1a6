#include "dsrgkit/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "dsrgkit/errors.hpp"
#include "dsrgkit/group_algebra.hpp"
#include "dsrgkit/spectra.hpp"

namespace dsrgkit {

namespace {

constexpr std::size_t kMaxSelectionBits = 24;

std::string elem(const AbelianGroup& A, Rank r) { return to_string(A.unrank(r)); }

std::string set_text(const AbelianGroup& A, const ElementSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += elem(A, s[i]);
  }
  return out + "}";
}

std::string exps_text(const AbelianGroup& A, Rank j) { return "chi" + elem(A, j); }

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

// Empty when B is a subgroup; otherwise names a pair whose difference escapes.
std::string subgroup_witness(const AbelianGroup& A, const ElementSet& B) {
  if (!contains(B, 0)) return "identity not in B";
  for (Rank x : B)
    for (Rank y : B)
      if (!contains(B, A.sub(x, y)))
        return elem(A, x) + " - " + elem(A, y) + " = " + elem(A, A.sub(x, y)) + " not in B";
  return {};
}

// Empty when X is a union of B-cosets.
std::string coset_union_witness(const AbelianGroup& A, const ElementSet& B, const ElementSet& X) {
  for (Rank x : X)
    for (Rank b : B)
      if (!contains(X, A.add(x, b)))
        return elem(A, x) + " + " + elem(A, b) + " = " + elem(A, A.add(x, b)) + " not in the set";
  return {};
}

std::string first_difference(const AbelianGroup& A, const AlgElem& u, const AlgElem& v) {
  for (Rank g = 0; g < A.order(); ++g)
    if (u[g] != v[g])
      return "coefficient at " + elem(A, g) + ": " + std::to_string(u[g]) + " vs " + std::to_string(v[g]);
  return {};
}

std::string set_difference_witness(const AbelianGroup& A, const ElementSet& u, const ElementSet& v) {
  const ElementSet only_u = set_difference(u, v);
  if (!only_u.empty()) return elem(A, only_u.front()) + " only on the left";
  const ElementSet only_v = set_difference(v, u);
  if (!only_v.empty()) return elem(A, only_v.front()) + " only on the right";
  return {};
}

Condition cond(std::string name, bool holds, std::string witness = {}) {
  return Condition{std::move(name), holds, holds ? std::string{} : std::move(witness), false};
}

bool all_hold(const Certificate& c) {
  return std::all_of(c.conditions.begin(), c.conditions.end(),
                     [](const Condition& k) { return k.informational || k.holds; });
}

// Runs the matrix oracle and records whether it agrees with the verdict.
// `excluded` says whether the oracle's outcome is consistent with NotDsrg.
void attach_oracle(const ExtensionSpec& G, const ConnectionSet& S, Certificate& cert,
                   const CertifyOptions& opts,
                   const std::function<bool(const std::optional<DsrgParams>&)>& excluded) {
  if (cert.verdict == Verdict::Dsrg && cert.params && cert.params->is_srg())
    cert.notes.push_back("t = k: the graph is undirected (strongly regular)");
  if (!opts.run_oracle) return;
  if (cert.verdict != Verdict::Dsrg && cert.verdict != Verdict::NotDsrg) return;
  std::optional<DsrgParams> oracle;
  try {
    oracle = infer_params_matrix(G, S, opts.limits);
  } catch (const CapError& e) {
    cert.notes.push_back(std::string("oracle skipped: ") + e.what());
    return;
  }
  if (cert.verdict == Verdict::Dsrg)
    cert.oracle_agrees = oracle.has_value() && oracle == cert.params;
  else
    cert.oracle_agrees = excluded(oracle);
}

bool no_proper_dsrg(const std::optional<DsrgParams>& p) { return !p || !p->is_proper(); }

Certificate not_applicable(std::string rule, std::string why) {
  Certificate c;
  c.rule = std::move(rule);
  c.applicable = false;
  c.verdict = Verdict::NotApplicable;
  c.notes.push_back(std::move(why));
  return c;
}

void require_set(const ExtensionSpec& G, const ConnectionSet& S) {
  (void)make_connection_set(G.base(), S.X, S.Y);
}

// Shared B-subgroup and coset-union conditions; returns ℓ = |B|.
std::size_t add_coset_conditions(const AbelianGroup& A, const ElementSet& B,
                                 const std::vector<std::pair<std::string, const ElementSet*>>& sets,
                                 Certificate& c) {
  const std::string sw = subgroup_witness(A, B);
  c.conditions.push_back(cond("B_is_subgroup", sw.empty(), sw + " (B = " + set_text(A, B) + ")"));
  for (const auto& [name, s] : sets) {
    if (!sw.empty()) {
      c.conditions.push_back(cond(name, false, "B is not a subgroup"));
      continue;
    }
    const std::string w = coset_union_witness(A, B, *s);
    c.conditions.push_back(cond(name, w.empty(), w));
  }
  return B.size();
}

void require_subgroup(const AbelianGroup& A, const ElementSet& B) {
  const std::string w = subgroup_witness(A, B);
  if (!w.empty()) throw ValidationError("B is not a subgroup: " + w);
}

ElementSet union_of(const std::vector<const ElementSet*>& parts) {
  ElementSet out;
  for (const ElementSet* p : parts) out.insert(out.end(), p->begin(), p->end());
  return normalized(std::move(out));
}

// Pairs of cosets {C, f(C)} for the constructions that need X ∩ f(X) = ∅ and
// X ∪ f(X) = A∖B.
CosetPairing paired_cosets(const ExtensionSpec& G, const ElementSet& B) {
  const AbelianGroup& A = G.base();
  require_subgroup(A, B);
  if (image(G.f(), B) != B) throw ValidationError("B is not f-stable: f(B) = " + set_text(A, image(G.f(), B)));
  CosetPairing p = f_orbit_pairing(A, Subgroup{B}, G.f());
  if (!p.fixed.empty())
    throw InfeasibleError("coset " + set_text(A, p.fixed.front()) +
                          " is f-fixed, so X and f(X) cannot be disjoint");
  if (p.pairs.empty()) throw InfeasibleError("B = A leaves no cosets to choose");
  if (p.pairs.size() > kMaxSelectionBits)
    throw CapError(std::to_string(p.pairs.size()) + " coset pairs exceed the selection cap");
  return p;
}

ElementSet chosen_union(const CosetPairing& p, const std::vector<bool>& choice) {
  if (choice.size() != p.pairs.size())
    throw InputError("choice has " + std::to_string(choice.size()) + " entries, expected " +
                     std::to_string(p.pairs.size()));
  std::vector<const ElementSet*> parts;
  for (std::size_t i = 0; i < choice.size(); ++i)
    parts.push_back(choice[i] ? &p.pairs[i].second : &p.pairs[i].first);
  return union_of(parts);
}

std::vector<bool> bits_of(std::uint64_t mask, std::size_t width) {
  std::vector<bool> out(width);
  for (std::size_t i = 0; i < width; ++i) out[i] = (mask >> i) & 1U;
  return out;
}

bool sorted_by_set(const Construction& a, const Construction& b) { return a.set < b.set; }

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Dsrg: return "dsrg";
    case Verdict::NotDsrg: return "not_dsrg";
    case Verdict::NotApplicable: return "not_applicable";
    case Verdict::Undecided: return "undecided";
  }
  return "?";
}

const Condition* Certificate::find(std::string_view name) const {
  for (const auto& c : conditions)
    if (c.name == name) return &c;
  return nullptr;
}

bool Certificate::holds(std::string_view name) const {
  const Condition* c = find(name);
  return c && c->holds;
}

DsrgParams family_f1(std::int64_t n, std::int64_t ell) {
  return {2 * n, n - ell, (n - ell) / 2, (n - 3 * ell) / 2, (n - ell) / 2};
}

DsrgParams family_f2(std::int64_t n, std::int64_t ell) {
  return {2 * n, n, (n + ell) / 2, (n - ell) / 2, (n + ell) / 2};
}

DsrgParams family_f3(std::int64_t n, std::int64_t ell) {
  return {2 * n, n, n / 2 + ell, n / 2 - ell, n / 2 + ell};
}

// -- screens -----------------------------------------------------------------

Certificate thm1_screen(const ExtensionSpec& G, const ConnectionSet& S, const DsrgParams& params,
                        const CertifyOptions& opts) {
  require_set(G, S);
  const AbelianGroup& A = G.base();
  const std::size_t n = A.order();
  const double tol = opts.tolerance.character_for(n);
  Certificate c;
  c.rule = "thm1";
  c.applicable = true;

  const AlgElem X = from_set(A, S.X);
  const AlgElem Y = from_set(A, S.Y);
  const AlgElem fX = f_image(G.f(), X);
  const AlgElem M = X + fX;
  const std::int64_t lm = params.lambda - params.mu;
  const std::int64_t d = as_int(S.X.size()) - as_int(S.Y.size());

  c.conditions.push_back(cond("degree", params.n == as_int(G.order()) && params.k == as_int(S.size()),
                              "declared " + to_string(params) + " but 2n = " +
                                  std::to_string(G.order()) + ", |S| = " + std::to_string(S.size())));

  const AlgElem Minv = inverted(A, M);
  c.conditions.push_back(cond("inverse_closed", M == Minv, first_difference(A, M, Minv)));

  const IntegralityReport integ = is_integral(A, M);
  bool small = true;
  std::string small_w;
  for (Rank g = 0; g < n && small; ++g)
    if (M[g] < 0 || M[g] > 2) {
      small = false;
      small_w = "multiplicity " + std::to_string(M[g]) + " at " + elem(A, g);
    }
  c.conditions.push_back(
      cond("integral_orbits", integ.integral && small,
           !integ.integral ? "not constant on orbit " + set_text(A, *integ.witness) : small_w));

  const auto chiX = character_values(A, X);
  const auto chiFX = character_values(A, fX);
  const auto chiY = character_values(A, Y);
  auto near = [&](Complex z, double v) { return std::abs(z - Complex(v, 0.0)) <= tol; };

  std::string char_w, menu_w;
  for (Rank j = 1; j < n; ++j) {
    if (!char_w.empty()) break;
    if (std::abs(chiY[j]) > tol) {
      if (!near(chiX[j] + chiFX[j], static_cast<double>(lm)))
        char_w = exps_text(A, j) + ": chi(Y) != 0 but chi(X + fX) != lambda - mu";
    } else {
      const double a = static_cast<double>(d);
      const double b = static_cast<double>(lm - d);
      if (!(near(chiX[j], a) || near(chiX[j], b)) || !(near(chiFX[j], a) || near(chiFX[j], b)))
        char_w = exps_text(A, j) + ": chi(Y) = 0 but chi(X) outside {|X|-|Y|, lambda-mu-(|X|-|Y|)}";
    }
  }
  c.conditions.push_back(cond("character_condition", char_w.empty(), char_w));

  for (Rank j = 1; j < n && menu_w.empty(); ++j) {
    const Complex v = chiX[j] + chiFX[j];
    if (!near(v, static_cast<double>(lm)) && !near(v, 2.0 * static_cast<double>(d)) &&
        !near(v, 2.0 * static_cast<double>(lm - d)))
      menu_w = exps_text(A, j) + " gives eigenvalue " + std::to_string(v.real());
  }
  if (menu_w.empty() && M.total() != 2 * as_int(S.X.size())) menu_w = "trivial eigenvalue differs from 2|X|";
  c.conditions.push_back(cond("eigenvalue_menu", menu_w.empty(), menu_w));

  c.params = params;
  c.verdict = all_hold(c) ? Verdict::Undecided : Verdict::NotDsrg;
  if (c.verdict == Verdict::Undecided) c.notes.push_back("necessary conditions only");
  attach_oracle(G, S, c, opts, [&](const std::optional<DsrgParams>& p) { return p != params; });
  if (c.verdict == Verdict::NotDsrg) c.params.reset();
  return c;
}

Certificate cor2_screen(const ExtensionSpec& G, const ConnectionSet& S, const CertifyOptions& opts) {
  require_set(G, S);
  const AbelianGroup& A = G.base();
  const std::size_t n = A.order();
  const double tol = opts.tolerance.character_for(n);
  Certificate c;
  c.rule = "cor2";
  c.applicable = true;

  const ElementSet nonzero = set_difference(full_set(n), {0});
  const bool trivial_y = S.Y == ElementSet{0} || S.Y == nonzero;
  c.conditions.push_back(cond("Y_not_trivial_or_cotrivial", !(trivial_y && n >= 5),
                              "Y = " + set_text(A, S.Y) + " with n = " + std::to_string(n) + " >= 5"));

  const auto chiY = character_values(A, from_set(A, S.Y));
  std::optional<Rank> vanishing;
  for (Rank j = 1; j < n && !vanishing; ++j)
    if (std::abs(chiY[j]) <= tol) vanishing = j;
  Condition b1 = cond("branch_i_vanishing_character", vanishing.has_value(),
                      "chi(Y) != 0 for every non-trivial chi");
  if (vanishing) b1.witness = exps_text(A, *vanishing);
  c.conditions.push_back(b1);

  const ElementSet fX = image(G.f(), S.X);
  const bool partition = set_intersection(S.X, fX).empty() && set_union(S.X, fX) == nonzero;
  const std::int64_t gap = 2 * as_int(S.Y.size()) - as_int(n);
  const bool window = gap * gap < 2 * as_int(n) - 1;
  std::string w2;
  if (!partition) w2 = "X and f(X) do not partition A minus the identity";
  else if (!window) w2 = "|Y| = " + std::to_string(S.Y.size()) + " outside the window";
  c.conditions.push_back(cond("branch_ii_partition_and_window", partition && window, w2));

  const bool rejected = (trivial_y && n >= 5) || (!vanishing && !(partition && window));
  c.verdict = rejected ? Verdict::NotDsrg : Verdict::Undecided;
  if (!rejected) c.notes.push_back("a branch is possible; the screen does not decide DSRG status");
  attach_oracle(G, S, c, opts, no_proper_dsrg);
  return c;
}

// -- iff certifiers ------------------------------------------------------------

Certificate thm2_certify(const ExtensionSpec& G, const ConnectionSet& S, const CertifyOptions& opts) {
  require_set(G, S);
  const AbelianGroup& A = G.base();
  const ElementSet fX = image(G.f(), S.X);
  const ElementSet fY = image(G.f(), S.Y);
  if (!set_intersection(S.X, fX).empty()) return not_applicable("thm2", "X meets f(X)");
  if (!set_intersection(S.Y, fY).empty()) return not_applicable("thm2", "Y meets f(Y)");
  if (S.X.size() != S.Y.size()) return not_applicable("thm2", "|X| != |Y|");
  if (S.X.empty()) return not_applicable("thm2", "empty connection set");

  Certificate c;
  c.rule = "thm2";
  c.applicable = true;
  const ElementSet XfX = set_union(S.X, fX);
  const ElementSet B = set_difference(full_set(A.order()), XfX);
  const std::size_t ell = add_coset_conditions(A, B, {{"X_coset_union", &S.X}, {"Y_coset_union", &S.Y}}, c);
  const ElementSet YfY = set_union(S.Y, fY);
  c.conditions.push_back(cond("X_cup_fX_equals_Y_cup_fY", XfX == YfY, set_difference_witness(A, XfX, YfY)));
  const AlgElem Xb = from_set(A, S.X);
  const AlgElem Yb = from_set(A, S.Y);
  const AlgElem lhs = convolve(A, Xb, f_image(G.f(), Xb));
  const AlgElem rhs = convolve(A, Yb, f_image(G.f(), Yb));
  c.conditions.push_back(cond("XfX_equals_YfY", lhs == rhs, first_difference(A, lhs, rhs)));

  if (all_hold(c)) {
    c.verdict = Verdict::Dsrg;
    c.params = family_f1(as_int(A.order()), as_int(ell));
  } else {
    c.verdict = Verdict::NotDsrg;
  }
  attach_oracle(G, S, c, opts, no_proper_dsrg);
  return c;
}

Certificate cor3_certify(const ExtensionSpec& G, const ConnectionSet& S, const CertifyOptions& opts) {
  require_set(G, S);
  const AbelianGroup& A = G.base();
  const ElementSet fX = image(G.f(), S.X);
  if (!set_intersection(S.X, fX).empty()) return not_applicable("cor3", "X meets f(X)");
  if (S.Y != S.X && S.Y != fX) return not_applicable("cor3", "Y is neither X nor f(X)");
  if (S.X.empty()) return not_applicable("cor3", "empty connection set");

  Certificate c;
  c.rule = "cor3";
  c.applicable = true;
  const ElementSet B = set_difference(full_set(A.order()), set_union(S.X, fX));
  const std::size_t ell = add_coset_conditions(A, B, {{"X_coset_union", &S.X}}, c);
  if (all_hold(c)) {
    c.verdict = Verdict::Dsrg;
    c.params = family_f1(as_int(A.order()), as_int(ell));
  } else {
    c.verdict = Verdict::NotDsrg;
  }
  attach_oracle(G, S, c, opts, no_proper_dsrg);
  return c;
}

Certificate thm3_certify(const ExtensionSpec& G, const ConnectionSet& S, const CertifyOptions& opts) {
  require_set(G, S);
  const AbelianGroup& A = G.base();
  const std::size_t n = A.order();
  if (n % 2 == 0 || n < 3) return not_applicable("thm3", "n must be odd and at least 3");

  Certificate c;
  c.rule = "thm3";
  c.applicable = true;
  const std::size_t half = (n - 1) / 2;
  c.conditions.push_back(cond("sizes", S.X.size() == half && S.Y.size() == half,
                              "|X| = " + std::to_string(S.X.size()) + ", |Y| = " +
                                  std::to_string(S.Y.size()) + ", expected " + std::to_string(half)));
  const ElementSet fX = image(G.f(), S.X);
  const ElementSet meet = set_intersection(S.X, fX);
  const ElementSet nonzero = set_difference(full_set(n), {0});
  std::string pw;
  if (!meet.empty()) pw = elem(A, meet.front()) + " in X and f(X)";
  else pw = set_difference_witness(A, set_union(S.X, fX), nonzero);
  c.conditions.push_back(cond("X_fX_partition", meet.empty() && set_union(S.X, fX) == nonzero, pw));
  c.conditions.push_back(cond("alpha_is_identity", G.alpha() == 0, "alpha = " + elem(A, G.alpha())));
  const AlgElem Xb = from_set(A, S.X);
  const AlgElem Yb = from_set(A, S.Y);
  const AlgElem lhs = convolve(A, Xb, f_image(G.f(), Xb));
  const AlgElem rhs = convolve(A, Yb, f_image(G.f(), Yb));
  c.conditions.push_back(cond("XfX_equals_YfY", lhs == rhs, first_difference(A, lhs, rhs)));

  const DsrgParams target = family_f1(as_int(n), 1);
  if (all_hold(c)) {
    c.verdict = Verdict::Dsrg;
    c.params = target;
  } else {
    c.verdict = Verdict::NotDsrg;
    if (G.alpha() != 0) c.notes.push_back("alpha != e excludes these parameters");
  }
  attach_oracle(G, S, c, opts, [&](const std::optional<DsrgParams>& p) { return p != target; });
  return c;
}

Certificate thm4_certify(const ExtensionSpec& G, const ConnectionSet& S, const CertifyOptions& opts) {
  require_set(G, S);
  const AbelianGroup& A = G.base();
  const ElementSet all = full_set(A.order());
  const ElementSet fX = image(G.f(), S.X);
  if (!set_intersection(S.X, fX).empty()) return not_applicable("thm4", "X meets f(X)");
  if (S.Y != set_difference(all, S.X) && S.Y != set_difference(all, fX))
    return not_applicable("thm4", "Y is neither A minus X nor A minus f(X)");

  Certificate c;
  c.rule = "thm4";
  c.applicable = true;
  const ElementSet B = set_difference(all, set_union(S.X, fX));
  const std::size_t ell = add_coset_conditions(A, B, {{"X_coset_union", &S.X}}, c);
  if (all_hold(c)) {
    c.verdict = Verdict::Dsrg;
    c.params = family_f2(as_int(A.order()), as_int(ell));
  } else {
    c.verdict = Verdict::NotDsrg;
  }
  attach_oracle(G, S, c, opts, no_proper_dsrg);
  return c;
}

Certificate thm5_certify(const ExtensionSpec& G, const ElementSet& Xin, const CertifyOptions& opts) {
  const AbelianGroup& A = G.base();
  const ElementSet X = normalized(Xin);
  const ConnectionSet S = make_connection_set(A, X, set_union(X, {0}));
  const std::size_t n = A.order();
  const ElementSet fX = image(G.f(), X);
  if (!set_intersection(X, fX).empty()) return not_applicable("thm5", "X meets f(X)");

  Certificate c;
  c.rule = "thm5";
  c.applicable = true;
  c.conditions.push_back(cond("alpha_is_identity", G.alpha() == 0, "alpha = " + elem(A, G.alpha())));
  const ElementSet Xinv = inverse(A, X);
  c.conditions.push_back(cond("fX_equals_X_inverse", fX == Xinv, set_difference_witness(A, fX, Xinv)));

  const std::int64_t lambda = as_int(X.size());
  const ElementSet U = set_union(X, Xinv);
  const ElementSet nonzero = set_difference(full_set(n), {0});
  const bool case_i = U == nonzero;
  std::optional<std::int64_t> mu;

  if (case_i) {
    c.conditions.push_back(cond("case_i_U_is_A_minus_e", true));
    mu = lambda + 1;
  } else {
    // Case (ii): Cay(A, U) strongly regular with (n, 2λ, λ+μ−2, 2μ), μ ≤ λ,
    // n = (λ+1)(λ+μ)/μ, and X̄² + (λ−μ)X̄⁻¹ = (X̄⁻¹)² + (λ−μ)X̄.
    const AlgElem Ub = from_set(A, U);
    const AlgElem U2 = convolve(A, Ub, Ub);
    std::optional<std::int64_t> on, off;
    std::string srg_w;
    if (U.empty()) srg_w = "X is empty";
    for (Rank g = 1; g < n && srg_w.empty(); ++g) {
      auto& slot = contains(U, g) ? on : off;
      if (!slot) slot = U2[g];
      else if (*slot != U2[g]) srg_w = "U^2 not constant at " + elem(A, g);
    }
    if (srg_w.empty() && U2[0] != as_int(U.size())) srg_w = "U is not inverse closed";
    if (srg_w.empty() && !off) srg_w = "U is complete";
    if (srg_w.empty() && (*off % 2 != 0 || *off == 0)) srg_w = "off-U coefficient " + std::to_string(*off) + " is not a positive even number";
    if (srg_w.empty()) {
      mu = *off / 2;
      if (on && *on != lambda + *mu - 2)
        srg_w = "on-U coefficient " + std::to_string(*on) + " != lambda + mu - 2 = " + std::to_string(lambda + *mu - 2);
    }
    c.conditions.push_back(cond("case_ii_U_strongly_regular", srg_w.empty(), srg_w));
    const bool have_mu = srg_w.empty();
    c.conditions.push_back(cond("case_ii_mu_at_most_lambda", have_mu && *mu <= lambda,
                                have_mu ? "mu = " + std::to_string(*mu) + " > lambda" : "no mu"));
    c.conditions.push_back(
        cond("case_ii_order_formula", have_mu && as_int(n) * *mu == (lambda + 1) * (lambda + *mu),
             have_mu ? "n * mu != (lambda+1)(lambda+mu)" : "no mu"));
    if (have_mu) {
      const AlgElem Xb = from_set(A, X);
      const AlgElem Xi = inverted(A, Xb);
      const AlgElem lhs = convolve(A, Xb, Xb) + (lambda - *mu) * Xi;
      const AlgElem rhs = convolve(A, Xi, Xi) + (lambda - *mu) * Xb;
      c.conditions.push_back(cond("case_ii_commutation", lhs == rhs, first_difference(A, lhs, rhs)));
      const SpectrumReport spec = cayley_eigenvalues_abelian(A, Ub, opts.tolerance);
      const double least = spec.grouped.back().value.real();
      Condition le = cond("least_eigenvalue_is_minus_two", std::abs(least + 2.0) <= opts.tolerance.grouping,
                          "least eigenvalue " + std::to_string(least));
      le.informational = true;
      c.conditions.push_back(le);
    } else {
      c.conditions.push_back(cond("case_ii_commutation", false, "no mu"));
    }
  }

  if (all_hold(c) && mu) {
    c.verdict = Verdict::Dsrg;
    c.params = DsrgParams{2 * as_int(n), 2 * lambda + 1, *mu, lambda, lambda + 1};
    c.notes.push_back(case_i ? "case (i)" : "case (ii)");
  } else {
    c.verdict = Verdict::NotDsrg;
  }
  attach_oracle(G, S, c, opts, no_proper_dsrg);
  return c;
}

// -- sufficient rule -------------------------------------------------------------

namespace {

// Some a with X ∩ f(X) = a + B and X ∪ (a + X) = A.
std::optional<Rank> thm6_translate(const AbelianGroup& A, const ElementSet& X, const ElementSet& fX,
                                   const ElementSet& B, std::optional<Rank> only) {
  const ElementSet meet = set_intersection(X, fX);
  const ElementSet all = full_set(A.order());
  for (Rank a : meet) {
    if (only && a != *only) continue;
    if (translate(A, B, a) == meet && set_union(X, translate(A, X, a)) == all) return a;
  }
  return std::nullopt;
}

}  // namespace

Certificate thm6_certify(const ExtensionSpec& G, const ElementSet& Xin, const CertifyOptions& opts) {
  const AbelianGroup& A = G.base();
  const ElementSet X = normalized(Xin);
  const ConnectionSet S = make_connection_set(A, X, X);
  const std::size_t n = A.order();
  if (n % 2 != 0) return not_applicable("thm6", "n must be even");
  if (X.empty()) return not_applicable("thm6", "empty connection set");

  Certificate c;
  c.rule = "thm6";
  c.applicable = true;
  const ElementSet fX = image(G.f(), X);
  const ElementSet B = set_difference(full_set(n), set_union(X, fX));
  const std::size_t ell = add_coset_conditions(A, B, {{"X_coset_union", &X}}, c);
  c.conditions.insert(c.conditions.begin() + 1,
                      cond("alpha_in_B", contains(B, G.alpha()), "alpha = " + elem(A, G.alpha())));
  const auto a = thm6_translate(A, X, fX, B, std::nullopt);
  Condition tc = cond("translate_condition", a.has_value(), "no a with X meet f(X) = a+B and X cup (a+X) = A");
  if (a) tc.witness = "a = " + elem(A, *a);
  c.conditions.push_back(tc);

  if (all_hold(c)) {
    c.verdict = Verdict::Dsrg;
    c.params = family_f3(as_int(n), as_int(ell));
  } else {
    c.verdict = Verdict::Undecided;
    c.notes.push_back("sufficient conditions only");
  }
  attach_oracle(G, S, c, opts, no_proper_dsrg);
  return c;
}

Certificate certify(std::string_view rule, const ExtensionSpec& G, const ConnectionSet& S,
                    const std::optional<DsrgParams>& params, const CertifyOptions& opts) {
  if (rule == "thm1") {
    if (!params) throw InputError("rule thm1 needs declared parameters");
    return thm1_screen(G, S, *params, opts);
  }
  if (rule == "cor2") return cor2_screen(G, S, opts);
  if (rule == "thm2") return thm2_certify(G, S, opts);
  if (rule == "cor3") return cor3_certify(G, S, opts);
  if (rule == "thm3") return thm3_certify(G, S, opts);
  if (rule == "thm4") return thm4_certify(G, S, opts);
  if (rule == "thm5") {
    require_set(G, S);
    if (S.Y != set_union(S.X, {0})) return not_applicable("thm5", "Y is not X with the identity added");
    return thm5_certify(G, S.X, opts);
  }
  if (rule == "thm6") {
    require_set(G, S);
    if (S.Y != S.X) return not_applicable("thm6", "Y differs from X");
    return thm6_certify(G, S.X, opts);
  }
  throw InputError("unknown rule '" + std::string(rule) + "'");
}

// -- constructors ----------------------------------------------------------------

SubgroupCert certify_subgroup(const ExtensionSpec& G, const ElementSet& elements) {
  const AbelianGroup& A = G.base();
  const ElementSet B = normalized(elements);
  for (Rank b : B)
    if (b >= A.order()) throw InputError("subgroup element rank out of range");
  require_subgroup(A, B);
  return SubgroupCert{Subgroup{B}, B.size(), image(G.f(), B) == B, contains(B, G.alpha())};
}

Construction cor3_construct(const ExtensionSpec& G, const ElementSet& Bin, const std::vector<bool>& choice,
                            YMode mode, const CertifyOptions& opts) {
  const ElementSet B = normalized(Bin);
  const CosetPairing p = paired_cosets(G, B);
  if (!contains(B, G.alpha()))
    throw ValidationError("alpha = " + elem(G.base(), G.alpha()) + " is not in B");
  const ElementSet X = chosen_union(p, choice);
  const ElementSet Y = mode == YMode::SameAsX ? X : image(G.f(), X);
  Construction out{make_connection_set(G.base(), X, Y), {}};
  out.certificate = cor3_certify(G, out.set, opts);
  return out;
}

std::vector<Construction> cor3_construct_all(const ExtensionSpec& G, const ElementSet& B,
                                             const CertifyOptions& opts) {
  const CosetPairing p = paired_cosets(G, normalized(B));
  std::vector<Construction> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.pairs.size()); ++mask)
    for (YMode m : {YMode::SameAsX, YMode::ImageOfX})
      out.push_back(cor3_construct(G, B, bits_of(mask, p.pairs.size()), m, opts));
  std::sort(out.begin(), out.end(), sorted_by_set);
  return out;
}

Construction thm4_construct(const ExtensionSpec& G, const ElementSet& Bin, const std::vector<bool>& choice,
                            ComplementOf mode, const CertifyOptions& opts) {
  const ElementSet B = normalized(Bin);
  const CosetPairing p = paired_cosets(G, B);
  const ElementSet X = chosen_union(p, choice);
  const ElementSet all = full_set(G.base_order());
  const ElementSet Y = set_difference(all, mode == ComplementOf::X ? X : image(G.f(), X));
  Construction out{make_connection_set(G.base(), X, Y), {}};
  out.certificate = thm4_certify(G, out.set, opts);
  return out;
}

std::vector<Construction> thm4_construct_all(const ExtensionSpec& G, const ElementSet& B,
                                             const CertifyOptions& opts) {
  const CosetPairing p = paired_cosets(G, normalized(B));
  std::vector<Construction> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.pairs.size()); ++mask)
    for (ComplementOf m : {ComplementOf::X, ComplementOf::ImageOfX})
      out.push_back(thm4_construct(G, B, bits_of(mask, p.pairs.size()), m, opts));
  std::sort(out.begin(), out.end(), sorted_by_set);
  return out;
}

std::vector<Construction> thm6_construct_all(const ExtensionSpec& G, const ElementSet& Bin,
                                             std::optional<Rank> a, const CertifyOptions& opts) {
  const AbelianGroup& A = G.base();
  const ElementSet B = normalized(Bin);
  require_subgroup(A, B);
  if (A.order() % 2 != 0) throw PreconditionError("n must be even");
  if (!contains(B, G.alpha()))
    throw InfeasibleError("alpha = " + elem(A, G.alpha()) + " is not in B");
  if (a && *a >= A.order()) throw InputError("a is out of range");
  if (image(G.f(), B) != B) throw InfeasibleError("B is not f-stable");

  const auto all_cosets = cosets(A, Subgroup{B});
  const std::vector<ElementSet> others(all_cosets.begin() + 1, all_cosets.end());
  if (others.size() > kMaxSelectionBits)
    throw CapError(std::to_string(others.size()) + " cosets exceed the selection cap");

  std::vector<Construction> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << others.size()); ++mask) {
    std::vector<const ElementSet*> parts;
    for (std::size_t i = 0; i < others.size(); ++i)
      if ((mask >> i) & 1U) parts.push_back(&others[i]);
    const ElementSet X = union_of(parts);
    const ElementSet fX = image(G.f(), X);
    if (set_difference(full_set(A.order()), set_union(X, fX)) != B) continue;
    if (!thm6_translate(A, X, fX, B, a)) continue;
    Construction c{make_connection_set(A, X, X), thm6_certify(G, X, opts)};
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), sorted_by_set);
  return out;
}

std::optional<Construction> thm6_construct(const ExtensionSpec& G, const ElementSet& B,
                                           std::optional<Rank> a, const CertifyOptions& opts) {
  auto all = thm6_construct_all(G, B, a, opts);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

std::vector<Construction> cor5_enumerate(int n, const CertifyOptions& opts) {
  if (n < 2) throw InputError("n must be at least 2");
  const ExtensionSpec G = ExtensionSpec::dihedral(n);
  const AbelianGroup& A = G.base();
  std::vector<std::pair<Rank, Rank>> pairs;
  for (int i = 1; 2 * i < n; ++i) pairs.emplace_back(static_cast<Rank>(i), static_cast<Rank>(n - i));
  if (pairs.size() > kMaxSelectionBits)
    throw CapError(std::to_string(pairs.size()) + " sign choices exceed the selection cap");
  const bool even = n % 2 == 0;
  const Rank half = static_cast<Rank>(n / 2);

  std::vector<Construction> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    ElementSet T;
    for (std::size_t i = 0; i < pairs.size(); ++i) T.push_back((mask >> i) & 1U ? pairs[i].second : pairs[i].first);
    T = normalized(std::move(T));
    if (T.empty()) continue;  // n = 2: only the degenerate T = ∅
    if (even) {
      ElementSet reflected;
      for (Rank x : T) reflected.push_back(A.sub(half, x));
      if (normalized(std::move(reflected)) != T) continue;
    }
    Certificate cert = thm5_certify(G, T, opts);
    cert.rule = "cor5";
    cert.conditions.insert(cert.conditions.begin(), cond("T_shape", true));
    out.push_back(Construction{make_connection_set(A, T, set_union(T, {0})), std::move(cert)});
  }
  std::sort(out.begin(), out.end(), sorted_by_set);
  return out;
}

const char* to_string(CirculantSrgClass::Kind k) {
  switch (k) {
    case CirculantSrgClass::Kind::CompleteMultipartite: return "complete_multipartite";
    case CirculantSrgClass::Kind::DisjointCliques: return "disjoint_cliques";
    case CirculantSrgClass::Kind::PaleyParameters: return "paley_parameters";
    case CirculantSrgClass::Kind::Inconsistent: return "inconsistent";
  }
  return "?";
}

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

CirculantSrgClass lemma7_classify(int n, const ElementSet& Sin) {
  if (n < 1) throw InputError("n must be positive");
  const AbelianGroup A = AbelianGroup::make({n});
  const ElementSet S = normalized(Sin);
  for (Rank s : S)
    if (s >= A.order()) throw InputError("element out of range");
  if (contains(S, 0)) throw PreconditionError("S contains 0");
  if (inverse(A, S) != S) throw PreconditionError("S is not symmetric");

  const AlgElem Sb = from_set(A, S);
  const AlgElem S2 = convolve(A, Sb, Sb);
  std::optional<std::int64_t> on, off;
  for (Rank g = 1; g < A.order(); ++g) {
    auto& slot = contains(S, g) ? on : off;
    if (!slot) slot = S2[g];
    else if (*slot != S2[g]) throw PreconditionError("Cay(Z_n, S) is not strongly regular");
  }

  CirculantSrgClass out;
  const std::int64_t k = as_int(S.size());
  out.srg = DsrgParams{n, k, off.value_or(0), on.value_or(0), k};
  const std::size_t N = A.order();

  if (S.empty()) {
    out.kind = CirculantSrgClass::Kind::DisjointCliques;
    out.parts = N;
    out.part_size = 1;
    return out;
  }
  if (off && *off == 0) {
    // μ = 0: a disjoint union of cliques, one per coset of <S>.
    out.kind = CirculantSrgClass::Kind::DisjointCliques;
    out.part_size = S.size() + 1;
    out.parts = N / out.part_size;
    return out;
  }
  const MultipartiteVerdict mv = complete_multipartite_check(A, Sb);
  if (mv.complete_multipartite && mv.part_size > 0) {
    out.kind = CirculantSrgClass::Kind::CompleteMultipartite;
    out.parts = mv.parts.size();
    out.part_size = mv.part_size;
    return out;
  }
  const std::int64_t nn = n;
  if (nn % 4 == 1 && is_prime(nn) && out.srg.k == (nn - 1) / 2 && out.srg.lambda == (nn - 5) / 4 &&
      out.srg.mu == (nn - 1) / 4)
    out.kind = CirculantSrgClass::Kind::PaleyParameters;
  return out;
}

}  // namespace dsrgkit
