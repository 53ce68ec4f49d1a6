#include "dsrgkit/extension.hpp"

#include <string>

#include "dsrgkit/errors.hpp"

namespace dsrgkit {

ExtensionSpec ExtensionSpec::make(AbelianGroup A, Involution f, const GroupVector& alpha) {
  const Rank a = A.rank(alpha);
  if (f.table().size() != A.order()) throw InputError("involution does not match the group");
  if (f(a) != a)
    throw ValidationError("f(alpha) != alpha: f" + to_string(alpha) + " = " +
                          to_string(A.unrank(f(a))));
  return ExtensionSpec(std::move(A), std::move(f), a);
}

ExtensionSpec ExtensionSpec::dihedral(int n) {
  auto A = AbelianGroup::make({n});
  auto f = Involution::negation(A);
  return make(std::move(A), std::move(f), GroupVector{{0}});
}

ExtensionSpec ExtensionSpec::dicyclic(int n) {
  if (n < 2 || n % 2 != 0) throw InputError("dicyclic groups need an even n >= 2");
  auto A = AbelianGroup::make({n});
  auto f = Involution::negation(A);
  return make(std::move(A), std::move(f), GroupVector{{n / 2}});
}

Rank ExtensionSpec::mul(Rank u, Rank v) const {
  const auto n = static_cast<Rank>(A_.order());
  const bool ub = u >= n;
  const bool vb = v >= n;
  const Rank a = ub ? u - n : u;
  const Rank b = vb ? v - n : v;
  if (!ub) return A_.add(a, b) + (vb ? n : 0);  // a·b, a·bβ
  if (!vb) return A_.add(a, f_(b)) + n;         // aβ·b = a f(b) β
  return A_.add(A_.add(a, f_(b)), alpha_);      // aβ·bβ = a f(b) α
}

Rank ExtensionSpec::inv(Rank u) const {
  const auto n = static_cast<Rank>(A_.order());
  if (u < n) return A_.neg(u);
  // (aβ)⁻¹ = α⁻¹ f(a)⁻¹ β
  return A_.sub(A_.neg(f_(u - n)), alpha_) + n;
}

Rank ExtensionSpec::rank(const ExtElement& u) const {
  if (u.beta != 0 && u.beta != 1) throw InputError("beta flag must be 0 or 1");
  return embed(A_.rank(u.a), u.beta);
}

ExtElement ExtensionSpec::element(Rank u) const {
  if (u >= order()) throw InputError("element rank out of range");
  return ExtElement{A_.unrank(base_part(u)), beta_part(u)};
}

ExtElement ExtensionSpec::mul(const ExtElement& u, const ExtElement& v) const {
  return element(mul(rank(u), rank(v)));
}

ExtElement ExtensionSpec::inv(const ExtElement& u) const { return element(inv(rank(u))); }

std::vector<ExtElement> ExtensionSpec::elements() const {
  std::vector<ExtElement> out;
  out.reserve(order());
  for (Rank u = 0; u < order(); ++u) out.push_back(element(u));
  return out;
}

MultiplicationTable::MultiplicationTable(const ExtensionSpec& G, const Limits& limits)
    : order_(G.order()) {
  if (order_ > limits.oracle_max_vertices)
    throw CapError("group order " + std::to_string(order_) + " exceeds the oracle cap " +
                   std::to_string(limits.oracle_max_vertices));
  table_.resize(order_ * order_);
  inverse_.resize(order_);
  for (Rank u = 0; u < order_; ++u) {
    for (Rank v = 0; v < order_; ++v) table_[u * order_ + v] = G.mul(u, v);
  }
  // Inverses are read off the table rather than from the closed form.
  for (Rank u = 0; u < order_; ++u)
    for (Rank v = 0; v < order_; ++v)
      if (table_[u * order_ + v] == 0) {
        inverse_[u] = v;
        break;
      }
}

}  // namespace dsrgkit
