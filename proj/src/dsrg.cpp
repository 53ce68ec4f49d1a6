#include "dsrgkit/dsrg.hpp"

#include <sstream>

#include "dsrgkit/errors.hpp"

namespace dsrgkit {

ConnectionSet make_connection_set(const AbelianGroup& A, ElementSet X, ElementSet Y) {
  ConnectionSet S{normalized(std::move(X)), normalized(std::move(Y))};
  for (Rank x : S.X)
    if (x >= A.order()) throw InputError("X element rank out of range");
  for (Rank y : S.Y)
    if (y >= A.order()) throw InputError("Y element rank out of range");
  if (contains(S.X, 0)) throw InputError("X must not contain the identity");
  return S;
}

ElementSet group_elements(const ExtensionSpec& G, const ConnectionSet& S) {
  ElementSet out = S.X;
  for (Rank y : S.Y) out.push_back(G.embed(y, 1));
  return out;  // X ranks < n <= Yβ ranks, so already sorted
}

AlgElem connection_element(const ExtensionSpec& G, const ConnectionSet& S) {
  return from_set(G, group_elements(G, S));
}

std::string to_string(const DsrgParams& p) {
  std::ostringstream os;
  os << '(' << p.n << ',' << p.k << ',' << p.mu << ',' << p.lambda << ',' << p.t << ')';
  return os.str();
}

GraphKind kind_of(const DsrgParams& p) {
  if (p.is_srg()) return GraphKind::StronglyRegular;
  if (p.is_tournament()) return GraphKind::Tournament;
  return GraphKind::Dsrg;
}

const char* to_string(GraphKind k) {
  switch (k) {
    case GraphKind::Dsrg: return "dsrg";
    case GraphKind::StronglyRegular: return "srg";
    case GraphKind::Tournament: return "doubly_regular_tournament";
  }
  return "?";
}

const char* to_string(ViolationKind k) {
  return k == ViolationKind::NotRegular ? "not_regular" : "coeff_mismatch";
}

bool is_degenerate(const ExtensionSpec& G, const ConnectionSet& S) {
  return S.size() == 0 || S.size() == G.order() - 1;
}

namespace {

void require_valid(const ExtensionSpec& G, const ConnectionSet& S) {
  (void)make_connection_set(G.base(), S.X, S.Y);
}

std::optional<Violation> first_mismatch(const AlgElem& square, const AlgElem& s, std::int64_t t,
                                        std::int64_t lambda, std::int64_t mu) {
  if (square[0] != t) return Violation{ViolationKind::CoeffMismatch, 0, t, square[0]};
  for (Rank g = 1; g < square.size(); ++g) {
    const std::int64_t expected = s[g] ? lambda : mu;
    if (square[g] != expected) return Violation{ViolationKind::CoeffMismatch, g, expected, square[g]};
  }
  return std::nullopt;
}

}  // namespace

Eigen::MatrixXi build_cayley(const ExtensionSpec& G, const ConnectionSet& S, const Limits& limits) {
  require_valid(G, S);
  return build_cayley<int>(MultiplicationTable(G, limits), group_elements(G, S));
}

Inference infer_dsrg_params(const ExtensionSpec& G, const ConnectionSet& S) {
  require_valid(G, S);
  if (S.size() == 0) throw DegenerateError("degenerate: empty connection set, lambda unconstrained");
  if (S.size() == G.order() - 1)
    throw DegenerateError("degenerate: complete connection set, mu unconstrained");
  const AlgElem s = connection_element(G, S);
  const AlgElem sq = convolve(G, s, s);
  const auto supp = s.support();
  Rank non_member = 1;
  while (s[non_member]) ++non_member;
  const std::int64_t t = sq[0];
  const std::int64_t lambda = sq[supp.front()];
  const std::int64_t mu = sq[non_member];
  if (auto v = first_mismatch(sq, s, t, lambda, mu)) return *v;
  return DsrgParams{static_cast<std::int64_t>(G.order()), static_cast<std::int64_t>(S.size()), mu,
                    lambda, t};
}

std::optional<Violation> check_declared_params(const ExtensionSpec& G, const ConnectionSet& S,
                                               const DsrgParams& params) {
  require_valid(G, S);
  if (params.n != static_cast<std::int64_t>(G.order()) ||
      params.k != static_cast<std::int64_t>(S.size()))
    return Violation{ViolationKind::NotRegular, 0, params.k, static_cast<std::int64_t>(S.size())};
  const AlgElem s = connection_element(G, S);
  return first_mismatch(convolve(G, s, s), s, params.t, params.lambda, params.mu);
}

bool verify_dsrg_matrix(const ExtensionSpec& G, const ConnectionSet& S, const DsrgParams& params,
                        const Limits& limits) {
  return satisfies_dsrg_equation(build_cayley(G, S, limits), params);
}

std::optional<DsrgParams> infer_params_matrix(const ExtensionSpec& G, const ConnectionSet& S,
                                              const Limits& limits) {
  if (is_degenerate(G, S)) return std::nullopt;
  const Eigen::MatrixXi M = build_cayley(G, S, limits);
  const Eigen::MatrixXi sq = M * M;
  const Eigen::Index N = M.rows();
  DsrgParams p;
  p.n = N;
  p.k = M.row(0).sum();
  p.t = sq(0, 0);
  bool have_lambda = false;
  bool have_mu = false;
  for (Eigen::Index y = 1; y < N && !(have_lambda && have_mu); ++y) {
    if (M(0, y) && !have_lambda) {
      p.lambda = sq(0, y);
      have_lambda = true;
    } else if (!M(0, y) && !have_mu) {
      p.mu = sq(0, y);
      have_mu = true;
    }
  }
  if (!satisfies_dsrg_equation(M, p)) return std::nullopt;
  return p;
}

Lemma6Residuals lemma6_residuals(const ExtensionSpec& G, const ConnectionSet& S, const DsrgParams& p) {
  require_valid(G, S);
  const AbelianGroup& A = G.base();
  const std::size_t n = A.order();
  const AlgElem X = from_set(A, S.X);
  const AlgElem Y = from_set(A, S.Y);
  const AlgElem fX = f_image(G.f(), X);
  const AlgElem fY = f_image(G.f(), Y);
  const AlgElem e = unit(Carrier::A, n);
  const AlgElem Abar = all_ones(Carrier::A, n);

  Lemma6Residuals r;
  r.eq2 = convolve(A, X, X) + shifted(A, convolve(A, Y, fY), G.alpha()) -
          ((p.t - p.mu) * e + (p.lambda - p.mu) * X + p.mu * Abar);
  r.eq3 = convolve(A, X, Y) + convolve(A, Y, fX) - ((p.lambda - p.mu) * Y + p.mu * Abar);
  r.degree_matches = p.k == static_cast<std::int64_t>(S.size()) &&
                     p.n == static_cast<std::int64_t>(G.order());
  return r;
}

std::optional<DsrgParams> infer_params_lemma6(const ExtensionSpec& G, const ConnectionSet& S) {
  require_valid(G, S);
  if (is_degenerate(G, S)) return std::nullopt;
  const AbelianGroup& A = G.base();
  const AlgElem X = from_set(A, S.X);
  const AlgElem Y = from_set(A, S.Y);
  const AlgElem lhs2 = convolve(A, X, X) + shifted(A, convolve(A, Y, f_image(G.f(), Y)), G.alpha());
  const AlgElem lhs3 = convolve(A, X, Y) + convolve(A, Y, f_image(G.f(), X));

  // On A the coefficient is λ inside X and μ outside X ∪ {e}; e carries t.
  // On Aβ it is λ inside Y and μ outside.
  std::optional<std::int64_t> lambda, mu;
  if (!S.X.empty()) lambda = lhs2[S.X.front()];
  else lambda = lhs3[S.Y.front()];
  for (Rank a = 1; a < A.order() && !mu; ++a)
    if (!contains(S.X, a)) mu = lhs2[a];
  for (Rank a = 0; a < A.order() && !mu; ++a)
    if (!contains(S.Y, a)) mu = lhs3[a];

  DsrgParams p{static_cast<std::int64_t>(G.order()), static_cast<std::int64_t>(S.size()), *mu,
               *lambda, lhs2[0]};
  if (!lemma6_residuals(G, S, p).vanish()) return std::nullopt;
  return p;
}

}  // namespace dsrgkit
