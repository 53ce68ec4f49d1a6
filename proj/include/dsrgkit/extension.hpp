#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "dsrgkit/abelian.hpp"

namespace dsrgkit {

/// An element a·β^beta of G = A ∪ Aβ; for beta = 1 it is the left coefficient a of aβ.
struct ExtElement {
  GroupVector a;
  int beta = 0;

  friend bool operator==(const ExtElement&, const ExtElement&) = default;
  friend auto operator<=>(const ExtElement&, const ExtElement&) = default;
};

/// G = <A, β | β² = α, βaβ⁻¹ = f(a)>, of order 2|A|.
///
/// Elements are ranked as beta·n + rank(a): all of A first, then Aβ.
class ExtensionSpec {
 public:
  /// Throws ValidationError if f(alpha) != alpha.
  static ExtensionSpec make(AbelianGroup A, Involution f, const GroupVector& alpha);
  /// Dihedral group of order 2n: A = Z_n, f = negation, α = e.
  static ExtensionSpec dihedral(int n);
  /// Dicyclic group of order 2n (n even): A = Z_n, f = negation, α = n/2.
  static ExtensionSpec dicyclic(int n);

  const AbelianGroup& base() const { return A_; }
  const Involution& f() const { return f_; }
  Rank alpha() const { return alpha_; }
  GroupVector alpha_vector() const { return A_.unrank(alpha_); }

  std::size_t base_order() const { return A_.order(); }
  std::size_t order() const { return 2 * A_.order(); }

  /// f = id, so G is abelian; the index-2 theory assumes otherwise.
  bool is_abelian() const { return f_.is_identity(); }
  /// α = e (generalized dihedral); otherwise dicyclic-type.
  bool is_dihedral_type() const { return alpha_ == 0; }

  Rank identity() const { return 0; }
  Rank mul(Rank u, Rank v) const;
  Rank inv(Rank u) const;
  Rank beta_rank() const { return static_cast<Rank>(A_.order()); }
  /// Rank of a ∈ A (beta = 0) or aβ (beta = 1).
  Rank embed(Rank a, int beta) const { return beta ? a + static_cast<Rank>(A_.order()) : a; }
  Rank base_part(Rank u) const { return u < A_.order() ? u : u - static_cast<Rank>(A_.order()); }
  int beta_part(Rank u) const { return u < A_.order() ? 0 : 1; }

  Rank rank(const ExtElement& u) const;
  ExtElement element(Rank u) const;
  ExtElement mul(const ExtElement& u, const ExtElement& v) const;
  ExtElement inv(const ExtElement& u) const;
  /// All 2n elements in rank order.
  std::vector<ExtElement> elements() const;

 private:
  ExtensionSpec(AbelianGroup A, Involution f, Rank alpha)
      : A_(std::move(A)), f_(std::move(f)), alpha_(alpha) {}

  AbelianGroup A_;
  Involution f_;
  Rank alpha_ = 0;
};

/// Dense 2n×2n multiplication and inversion tables, for the matrix oracle.
class MultiplicationTable {
 public:
  /// Throws CapError above limits.oracle_max_vertices.
  explicit MultiplicationTable(const ExtensionSpec& G,
                               const Limits& limits = Limits::from_environment());

  std::size_t order() const { return order_; }
  Rank mul(Rank u, Rank v) const { return table_[u * order_ + v]; }
  Rank inv(Rank u) const { return inverse_[u]; }

 private:
  std::size_t order_;
  std::vector<Rank> table_;
  std::vector<Rank> inverse_;
};

}  // namespace dsrgkit
