#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <Eigen/Core>

#include "dsrgkit/abelian.hpp"
#include "dsrgkit/config.hpp"
#include "dsrgkit/extension.hpp"
#include "dsrgkit/group_algebra.hpp"

namespace dsrgkit {

/// S = X ∪ Yβ with X ⊆ A∖{e} and Y ⊆ A, stored as sorted A-ranks.
struct ConnectionSet {
  ElementSet X;
  ElementSet Y;

  std::size_t size() const { return X.size() + Y.size(); }
  friend bool operator==(const ConnectionSet&, const ConnectionSet&) = default;
  friend auto operator<=>(const ConnectionSet&, const ConnectionSet&) = default;
};

/// Normalizes and validates: ranks in range, identity not in X.
ConnectionSet make_connection_set(const AbelianGroup& A, ElementSet X, ElementSet Y);

/// S as G-ranks.
ElementSet group_elements(const ExtensionSpec& G, const ConnectionSet& S);
/// S̄ = X̄ + Ȳβ over G.
AlgElem connection_element(const ExtensionSpec& G, const ConnectionSet& S);

/// (n, k, μ, λ, t): A² = tI + λA + μ(J − I − A), AJ = JA = kJ.
struct DsrgParams {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t mu = 0;
  std::int64_t lambda = 0;
  std::int64_t t = 0;

  /// k² = t + λk + μ(n − 1 − k), the equation after multiplying by J.
  bool row_sum_identity_holds() const { return k * k == t + lambda * k + mu * (n - 1 - k); }
  /// t = k: an undirected strongly regular graph.
  bool is_srg() const { return t == k; }
  /// t = 0: a doubly regular tournament.
  bool is_tournament() const { return t == 0; }
  /// 0 < t < k.
  bool is_proper() const { return 0 < t && t < k; }

  friend bool operator==(const DsrgParams&, const DsrgParams&) = default;
  friend auto operator<=>(const DsrgParams&, const DsrgParams&) = default;
};

std::string to_string(const DsrgParams& p);

enum class GraphKind { Dsrg, StronglyRegular, Tournament };
GraphKind kind_of(const DsrgParams& p);
const char* to_string(GraphKind k);

enum class ViolationKind { NotRegular, CoeffMismatch };
const char* to_string(ViolationKind k);

/// First offending group element (by rank) with the expected and actual
/// coefficient of S̄² there; for NotRegular, the declared and actual degree.
struct Violation {
  ViolationKind kind = ViolationKind::CoeffMismatch;
  Rank witness = 0;
  std::int64_t expected = 0;
  std::int64_t actual = 0;
};

using Inference = std::variant<DsrgParams, Violation>;

/// 0/1 adjacency matrix of Cay(G, S): a[x][y] = 1 iff y·x⁻¹ ∈ S.
template <typename Scalar = int>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> build_cayley(
    const MultiplicationTable& table, const ElementSet& S) {
  const auto N = static_cast<Eigen::Index>(table.order());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> M =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(N, N);
  std::vector<char> in(table.order(), 0);
  for (Rank s : S) in[s] = 1;
  for (Rank x = 0; x < table.order(); ++x) {
    const Rank xi = table.inv(x);
    for (Rank y = 0; y < table.order(); ++y)
      if (in[table.mul(y, xi)]) M(x, y) = Scalar(1);
  }
  return M;
}

Eigen::MatrixXi build_cayley(const ExtensionSpec& G, const ConnectionSet& S,
                             const Limits& limits = Limits::from_environment());

/// Entrywise check of AJ = JA = kJ and A² = tI + λA + μ(J − I − A) in the
/// matrix's own scalar type.
template <typename Derived>
bool satisfies_dsrg_equation(const Eigen::MatrixBase<Derived>& adj, const DsrgParams& p) {
  using Scalar = typename Derived::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index N = adj.rows();
  if (adj.cols() != N || N != p.n) return false;
  const Mat A = adj;
  const Mat J = Mat::Ones(N, N);
  const Mat I = Mat::Identity(N, N);
  const auto k = static_cast<Scalar>(p.k);
  if (A * J != k * J || J * A != k * J) return false;
  const Mat rhs = static_cast<Scalar>(p.t) * I + static_cast<Scalar>(p.lambda) * A +
                  static_cast<Scalar>(p.mu) * (J - I - A);
  return A * A == rhs;
}

/// Reads (t, λ, μ) off S̄² computed by convolution over G. Throws
/// DegenerateError for empty or complete S.
Inference infer_dsrg_params(const ExtensionSpec& G, const ConnectionSet& S);

/// Checks declared parameters through S̄²; nullopt when they hold.
std::optional<Violation> check_declared_params(const ExtensionSpec& G, const ConnectionSet& S,
                                               const DsrgParams& params);

/// The matrix oracle with declared parameters. Throws CapError above
/// limits.oracle_max_vertices.
bool verify_dsrg_matrix(const ExtensionSpec& G, const ConnectionSet& S, const DsrgParams& params,
                        const Limits& limits = Limits::from_environment());

/// Matrix-oracle inference: reads candidate parameters from row e of A² and
/// confirms them entrywise. nullopt if no parameters fit (or S is degenerate).
std::optional<DsrgParams> infer_params_matrix(const ExtensionSpec& G, const ConnectionSet& S,
                                              const Limits& limits = Limits::from_environment());

/// LHS − RHS of the two equations over A:
///   X̄² + Ȳf(Ȳ)α = (t−μ)e + (λ−μ)X̄ + μĀ
///   X̄Ȳ + Ȳf(X̄)  = (λ−μ)Ȳ + μĀ
struct Lemma6Residuals {
  AlgElem eq2;
  AlgElem eq3;
  bool degree_matches = false;  // |X| + |Y| = k

  bool vanish() const { return degree_matches && eq2.is_zero() && eq3.is_zero(); }
};

Lemma6Residuals lemma6_residuals(const ExtensionSpec& G, const ConnectionSet& S, const DsrgParams& params);

/// Inference through the A-side equations alone; nullopt if no parameters fit.
std::optional<DsrgParams> infer_params_lemma6(const ExtensionSpec& G, const ConnectionSet& S);

/// S empty or S = G∖{e}.
bool is_degenerate(const ExtensionSpec& G, const ConnectionSet& S);

}  // namespace dsrgkit
