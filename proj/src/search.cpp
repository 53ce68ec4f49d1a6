#include "dsrgkit/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "dsrgkit/constructions.hpp"
#include "dsrgkit/errors.hpp"
#include "dsrgkit/spectra.hpp"

namespace dsrgkit {

std::vector<Subgroup> enumerate_subgroups(const AbelianGroup& A) {
  std::set<std::pair<std::size_t, ElementSet>> found;
  std::vector<ElementSet> frontier{ElementSet{0}};
  found.insert({1, ElementSet{0}});
  while (!frontier.empty()) {
    std::vector<ElementSet> next;
    for (const auto& H : frontier)
      for (Rank g = 1; g < A.order(); ++g) {
        if (contains(H, g)) continue;
        ElementSet gens = H;
        gens.push_back(g);
        Subgroup K = subgroup_closure(A, gens);
        if (found.insert({K.order(), K.elements}).second) next.push_back(std::move(K.elements));
      }
    frontier = std::move(next);
  }
  std::vector<Subgroup> out;
  for (auto& [size, elems] : found) out.push_back(Subgroup{elems});
  return out;
}

const char* to_string(CensusQuery::Mode m) {
  switch (m) {
    case CensusQuery::Mode::Brute: return "brute";
    case CensusQuery::Mode::Thm2Hypotheses: return "thm2";
    case CensusQuery::Mode::Thm5Hypotheses: return "thm5";
    case CensusQuery::Mode::Cor3Hypotheses: return "cor3";
    case CensusQuery::Mode::Thm4Hypotheses: return "thm4";
    case CensusQuery::Mode::Thm6Hypotheses: return "thm6";
    case CensusQuery::Mode::Family: return "family";
  }
  return "?";
}

const char* to_string(CensusQuery::Family f) {
  switch (f) {
    case CensusQuery::Family::F1: return "f1";
    case CensusQuery::Family::F2: return "f2";
    case CensusQuery::Family::F3: return "f3";
  }
  return "?";
}

namespace {

using Mask = std::uint64_t;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxMaskBits = 63;

ElementSet to_set(Mask m) {
  ElementSet s;
  for (Rank r = 0; m; ++r, m >>= 1)
    if (m & 1U) s.push_back(r);
  return s;
}

// Everything about the group the candidate loop needs, in mask form.
struct Tables {
  std::size_t n = 0;
  Mask full = 0;
  std::vector<Rank> f;
  std::vector<Rank> add;  // n×n
  Rank alpha = 0;

  explicit Tables(const ExtensionSpec& G) : n(G.base_order()), f(G.f().table()), alpha(G.alpha()) {
    if (n > kMaxMaskBits) throw CapError("|A| = " + std::to_string(n) + " exceeds the census mask width");
    full = (Mask{1} << n) - 1;
    add.resize(n * n);
    for (Rank a = 0; a < n; ++a)
      for (Rank b = 0; b < n; ++b) add[a * n + b] = G.base().add(a, b);
  }

  Mask image(Mask m) const {
    Mask out = 0;
    for (Rank r = 0; m; ++r, m >>= 1)
      if (m & 1U) out |= Mask{1} << f[r];
    return out;
  }
};

// Per-Y data: the coefficients of Ȳf(Ȳ)α and whether some non-trivial
// character vanishes on Ȳ.
struct YData {
  std::vector<std::int32_t> yy;
  bool vanishing = false;
};

YData make_ydata(const Tables& T, const AbelianGroup& A, Mask y, double tol) {
  YData d;
  d.yy.assign(T.n, 0);
  const ElementSet ys = to_set(y);
  for (Rank y1 : ys)
    for (Rank y2 : ys) ++d.yy[T.add[T.add[y1 * T.n + T.f[y2]] * T.n + T.alpha]];
  const auto chi = character_values(A, from_set(A, ys));
  for (std::size_t j = 1; j < chi.size() && !d.vanishing; ++j)
    if (std::abs(chi[j]) <= tol) d.vanishing = true;
  return d;
}

// Per-X data for the two equations over A.
struct XData {
  Mask x = 0;
  Mask fx = 0;
  std::vector<Mask> m1;  // m1[a] = {a − x}
  std::vector<Mask> m2;  // m2[a] = {a − f(x)}
  std::vector<std::int32_t> xx;
  bool inverse_closed = true;
  bool partition = false;  // X ⊔ f(X) = A∖{e}
};

XData make_xdata(const Tables& T, const AbelianGroup& A, Mask x) {
  XData d;
  d.x = x;
  d.fx = T.image(x);
  d.m1.assign(T.n, 0);
  d.m2.assign(T.n, 0);
  d.xx.assign(T.n, 0);
  const ElementSet xs = to_set(x);
  for (Rank a = 0; a < T.n; ++a)
    for (Rank e : xs) {
      d.m1[a] |= Mask{1} << A.sub(a, e);
      d.m2[a] |= Mask{1} << A.sub(a, T.f[e]);
    }
  for (Rank a = 0; a < T.n; ++a) d.xx[a] = std::popcount(x & d.m1[a]);
  // X̄ + f(X̄) inverse closed, as multiplicities.
  for (Rank a = 0; a < T.n && d.inverse_closed; ++a) {
    const Rank b = A.neg(a);
    const int ma = int((x >> a) & 1U) + int((d.fx >> a) & 1U);
    const int mb = int((x >> b) & 1U) + int((d.fx >> b) & 1U);
    if (ma != mb) d.inverse_closed = false;
  }
  d.partition = (x & d.fx) == 0 && (x | d.fx) == (T.full & ~Mask{1});
  return d;
}

// Exact DSRG test through the two equations over A.
std::optional<DsrgParams> evaluate(const Tables& T, const XData& X, Mask y, const YData& Y) {
  const int kx = std::popcount(X.x);
  const int ky = std::popcount(y);
  const std::int64_t k = kx + ky;
  const std::int64_t order = 2 * static_cast<std::int64_t>(T.n);
  if (k == 0 || k == order - 1) return std::nullopt;
  std::int64_t lambda = -1, mu = -1;
  auto fits = [&](bool member, std::int64_t v) {
    std::int64_t& slot = member ? lambda : mu;
    if (slot < 0) slot = v;
    return slot == v;
  };
  for (Rank a = 1; a < T.n; ++a)
    if (!fits((X.x >> a) & 1U, X.xx[a] + Y.yy[a])) return std::nullopt;
  for (Rank a = 0; a < T.n; ++a) {
    const std::int64_t v = std::popcount(y & X.m1[a]) + std::popcount(y & X.m2[a]);
    if (!fits((y >> a) & 1U, v)) return std::nullopt;
  }
  return DsrgParams{order, k, mu, lambda, X.xx[0] + Y.yy[0]};
}

std::vector<Mask> all_x(const Tables& T) {
  std::vector<Mask> xs;
  for (Mask m = 0; m < (Mask{1} << (T.n - 1)); ++m) xs.push_back(m << 1);
  return xs;
}

std::vector<Mask> disjoint_x(const Tables& T, bool allow_identity) {
  std::vector<Mask> xs;
  const Mask start = allow_identity ? 0 : 1;
  for (Mask m = 0; m <= T.full; ++m) {
    if (m & start) continue;
    if ((m & T.image(m)) == 0) xs.push_back(m);
  }
  return xs;
}

// Y-candidates as a function of X, per mode.
struct Space {
  std::vector<Mask> xs;
  std::vector<Mask> shared_ys;                     // Brute: all; Thm2: f-disjoint Y's
  std::unordered_map<int, std::vector<Mask>> by_size;  // Thm2 buckets into shared_ys
  CensusQuery::Mode mode;

  std::vector<Mask> ys_for(const Tables& T, Mask x, Mask fx) const {
    switch (mode) {
      case CensusQuery::Mode::Thm5Hypotheses: return {x | 1U};
      case CensusQuery::Mode::Cor3Hypotheses: return {x, fx};
      case CensusQuery::Mode::Thm4Hypotheses: {
        const Mask a = T.full & ~x, b = T.full & ~fx;
        return a == b ? std::vector<Mask>{a} : std::vector<Mask>{std::min(a, b), std::max(a, b)};
      }
      case CensusQuery::Mode::Thm6Hypotheses: return {x};
      default: return {};
    }
  }
};

Space build_space(const Tables& T, CensusQuery::Mode mode) {
  Space s;
  s.mode = mode;
  switch (mode) {
    case CensusQuery::Mode::Brute:
      s.xs = all_x(T);
      for (Mask y = 0; y <= T.full; ++y) s.shared_ys.push_back(y);
      break;
    case CensusQuery::Mode::Thm2Hypotheses:
      s.xs = disjoint_x(T, false);
      s.shared_ys = disjoint_x(T, true);
      for (Mask y : s.shared_ys) s.by_size[std::popcount(y)].push_back(y);
      break;
    case CensusQuery::Mode::Thm5Hypotheses:
    case CensusQuery::Mode::Cor3Hypotheses:
    case CensusQuery::Mode::Thm4Hypotheses:
      s.xs = disjoint_x(T, false);
      break;
    case CensusQuery::Mode::Thm6Hypotheses:
      s.xs = all_x(T);
      break;
    case CensusQuery::Mode::Family:
      throw InputError("family mode has no brute candidate space");
  }
  return s;
}

std::uint64_t count_space(const Tables& T, const Space& s) {
  std::uint64_t total = 0;
  for (Mask x : s.xs) {
    if (s.mode == CensusQuery::Mode::Brute) total += s.shared_ys.size();
    else if (s.mode == CensusQuery::Mode::Thm2Hypotheses) {
      auto it = s.by_size.find(std::popcount(x));
      total += it == s.by_size.end() ? 0 : it->second.size();
    } else {
      total += s.ys_for(T, x, T.image(x)).size();
    }
  }
  return total;
}

std::uint64_t required_cap(const ExtensionSpec& G, CensusQuery::Mode mode) {
  const std::size_t n = G.base_order();
  if (mode == CensusQuery::Mode::Brute) {
    if (2 * n - 1 >= 64) return UINT64_MAX;
    return std::uint64_t{1} << (2 * n - 1);
  }
  const Tables T(G);
  return count_space(T, build_space(T, mode));
}

std::vector<std::string> matching_rules(const ExtensionSpec& G, const ConnectionSet& S) {
  CertifyOptions opts;
  opts.run_oracle = false;
  std::vector<std::string> out;
  for (const char* rule : {"cor3", "thm2", "thm3", "thm4", "thm5", "thm6"})
    if (certify(rule, G, S, std::nullopt, opts).verdict == Verdict::Dsrg) out.emplace_back(rule);
  return out;
}

void reverify(const ExtensionSpec& G, const CensusHit& hit, const Limits& limits) {
  const Inference inf = infer_dsrg_params(G, hit.set);
  const auto* p = std::get_if<DsrgParams>(&inf);
  if (!p || *p != hit.params) throw std::logic_error("census hit failed group-algebra re-verification");
  if (infer_params_matrix(G, hit.set, limits) != hit.params)
    throw std::logic_error("census hit failed matrix re-verification");
}

void finish(CensusResult& r, Clock::time_point start) {
  std::sort(r.hits.begin(), r.hits.end(), [](const CensusHit& a, const CensusHit& b) { return a.set < b.set; });
  r.counts.clear();
  for (const auto& h : r.hits) ++r.counts[h.params];
  r.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::uint64_t census_candidate_count(const ExtensionSpec& G, CensusQuery::Mode mode) {
  return required_cap(G, mode);
}

CensusResult brute_census(const CensusQuery& q) {
  const auto start = Clock::now();
  const ExtensionSpec& G = q.spec;
  const AbelianGroup& A = G.base();
  const std::uint64_t needed = required_cap(G, q.mode);
  if (needed == std::numeric_limits<std::uint64_t>::max())
    throw CapError("the candidate count exceeds 2^64 - 1; use a family or hypothesis mode instead");
  if (needed > q.limits.census_max_candidates)
    throw CapError(std::to_string(needed) + " candidates exceed the census cap " +
                   std::to_string(q.limits.census_max_candidates) + "; rerun with a cap of at least " +
                   std::to_string(needed));

  const Tables T(G);
  const Space space = build_space(T, q.mode);
  const double tol = q.tolerance.character_for(T.n);
  const std::int64_t n = static_cast<std::int64_t>(T.n);

  // Shared Y tables for the modes that reuse one Y list across all X.
  std::unordered_map<Mask, std::size_t> y_index;
  std::vector<YData> y_data;
  for (Mask y : space.shared_ys) {
    y_index.emplace(y, y_data.size());
    y_data.push_back(make_ydata(T, A, y, tol));
  }

  struct Local {
    std::vector<CensusHit> hits;
    std::uint64_t candidates = 0;
    std::uint64_t screened = 0;
    std::map<std::string, std::size_t> degenerate;
  };
  const unsigned workers = std::max(1U, q.workers);
  std::vector<Local> locals(workers);
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](unsigned w) {
    try {
      Local& out = locals[w];
      for (std::size_t i = w; i < space.xs.size(); i += workers) {
        const XData X = make_xdata(T, A, space.xs[i]);
        const std::vector<Mask>* ys = nullptr;
        std::vector<Mask> own;
        if (q.mode == CensusQuery::Mode::Brute) {
          ys = &space.shared_ys;
        } else if (q.mode == CensusQuery::Mode::Thm2Hypotheses) {
          auto it = space.by_size.find(std::popcount(X.x));
          if (it == space.by_size.end()) continue;
          ys = &it->second;
        } else {
          own = space.ys_for(T, X.x, X.fx);
          ys = &own;
        }
        out.candidates += ys->size();
        if (q.screens && !X.inverse_closed) {
          out.screened += ys->size();
          continue;
        }
        for (Mask y : *ys) {
          YData local_y;
          const YData* yd;
          if (auto it = y_index.find(y); it != y_index.end()) {
            yd = &y_data[it->second];
          } else {
            local_y = make_ydata(T, A, y, tol);
            yd = &local_y;
          }
          if (q.screens) {
            const std::int64_t gap = 2 * std::popcount(y) - n;
            if (!yd->vanishing && !(X.partition && gap * gap < 2 * n - 1)) {
              ++out.screened;
              continue;
            }
          }
          const auto p = evaluate(T, X, y, *yd);
          if (!p) continue;
          if (!p->is_proper()) {
            ++out.degenerate[to_string(kind_of(*p))];
            continue;
          }
          CensusHit hit{ConnectionSet{to_set(X.x), to_set(y)}, *p, {}};
          reverify(G, hit, q.limits);
          hit.rules = matching_rules(G, hit.set);
          out.hits.push_back(std::move(hit));
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  CensusResult r;
  std::map<std::string, std::size_t> degenerate;
  for (auto& l : locals) {
    r.hits.insert(r.hits.end(), std::make_move_iterator(l.hits.begin()), std::make_move_iterator(l.hits.end()));
    r.candidates += l.candidates;
    r.screened_out += l.screened;
    for (const auto& [k, v] : l.degenerate) degenerate[k] += v;
  }
  if (!q.screens) r.degenerate = std::move(degenerate);
  finish(r, start);
  return r;
}

CensusResult family_search(const CensusQuery& q) {
  const auto start = Clock::now();
  const ExtensionSpec& G = q.spec;
  const AbelianGroup& A = G.base();
  const auto n = static_cast<std::int64_t>(A.order());
  CertifyOptions opts;
  opts.tolerance = q.tolerance;
  opts.limits = q.limits;
  opts.run_oracle = false;

  CensusResult r;
  std::map<std::string, std::size_t> degenerate;
  std::set<ConnectionSet> seen;
  for (const Subgroup& B : enumerate_subgroups(A)) {
    if (q.ell && B.order() != *q.ell) continue;
    std::vector<Construction> built;
    try {
      switch (q.family) {
        case CensusQuery::Family::F1: built = cor3_construct_all(G, B.elements, opts); break;
        case CensusQuery::Family::F2: built = thm4_construct_all(G, B.elements, opts); break;
        case CensusQuery::Family::F3: built = thm6_construct_all(G, B.elements, std::nullopt, opts); break;
      }
    } catch (const InfeasibleError&) {
      continue;
    } catch (const ValidationError&) {
      continue;
    } catch (const PreconditionError&) {
      continue;
    }
    for (auto& c : built) {
      ++r.candidates;
      if (c.certificate.verdict != Verdict::Dsrg || !seen.insert(c.set).second) continue;
      const DsrgParams p = *c.certificate.params;
      if (!p.is_proper()) {
        ++degenerate[to_string(kind_of(p))];
        continue;
      }
      CensusHit hit{c.set, p, {}};
      reverify(G, hit, q.limits);
      hit.rules = matching_rules(G, hit.set);
      r.hits.push_back(std::move(hit));
    }
  }
  r.degenerate = std::move(degenerate);

  if (q.brute_cross_check) {
    CensusQuery bq = q;
    bq.mode = q.family == CensusQuery::Family::F1   ? CensusQuery::Mode::Cor3Hypotheses
              : q.family == CensusQuery::Family::F2 ? CensusQuery::Mode::Thm4Hypotheses
                                                    : CensusQuery::Mode::Thm6Hypotheses;
    const CensusResult brute = brute_census(bq);
    auto in_family = [&](const DsrgParams& p) {
      for (const Subgroup& B : enumerate_subgroups(A)) {
        const auto ell = static_cast<std::int64_t>(B.order());
        if (q.ell && B.order() != *q.ell) continue;
        const DsrgParams target = q.family == CensusQuery::Family::F1   ? family_f1(n, ell)
                                  : q.family == CensusQuery::Family::F2 ? family_f2(n, ell)
                                                                        : family_f3(n, ell);
        if (p == target) return true;
      }
      return false;
    };
    for (const auto& h : brute.hits)
      if (in_family(h.params) && !seen.count(h.set)) r.extra_brute_hits.push_back(h);
  }
  finish(r, start);
  return r;
}

CensusResult run_census(const CensusQuery& q) {
  return q.mode == CensusQuery::Mode::Family ? family_search(q) : brute_census(q);
}

}  // namespace dsrgkit
