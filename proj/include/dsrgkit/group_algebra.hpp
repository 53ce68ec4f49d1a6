#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Core>

#include "dsrgkit/abelian.hpp"
#include "dsrgkit/errors.hpp"
#include "dsrgkit/extension.hpp"

namespace dsrgkit {

/// Which group an algebra element lives over: the abelian subgroup A or G itself.
enum class Carrier { A, G };

inline const char* to_string(Carrier c) { return c == Carrier::A ? "A" : "G"; }

/// An element Σ c_g·g of the group ring over Scalar, stored densely by rank.
///
/// Coefficients may be negative so that differences such as X̄ − f(X̄) are
/// representable. Products go through the free `convolve` overloads, which
/// take the group that supplies the multiplication.
template <typename Scalar>
class GroupAlgebraElement {
 public:
  using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  GroupAlgebraElement() = default;
  GroupAlgebraElement(Carrier carrier, Eigen::Index size)
      : carrier_(carrier), coeffs_(Coefficients::Zero(size)) {}

  Carrier carrier() const { return carrier_; }
  Eigen::Index size() const { return coeffs_.size(); }
  const Coefficients& coeffs() const { return coeffs_; }
  Coefficients& coeffs() { return coeffs_; }

  Scalar operator[](Rank g) const { return coeffs_[g]; }
  Scalar& operator[](Rank g) { return coeffs_[g]; }
  Scalar coefficient(Rank g) const { return coeffs_[g]; }

  /// Image under the trivial character.
  Scalar total() const { return coeffs_.sum(); }
  bool is_zero() const { return coeffs_.isZero(); }

  ElementSet support() const {
    ElementSet s;
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != Scalar(0)) s.push_back(static_cast<Rank>(i));
    return s;
  }

  GroupAlgebraElement& operator+=(const GroupAlgebraElement& o) {
    check_compatible(o);
    coeffs_ += o.coeffs_;
    return *this;
  }
  GroupAlgebraElement& operator-=(const GroupAlgebraElement& o) {
    check_compatible(o);
    coeffs_ -= o.coeffs_;
    return *this;
  }
  GroupAlgebraElement& operator*=(Scalar s) {
    coeffs_ *= s;
    return *this;
  }

  friend GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b) {
    return a += b;
  }
  friend GroupAlgebraElement operator-(GroupAlgebraElement a, const GroupAlgebraElement& b) {
    return a -= b;
  }
  friend GroupAlgebraElement operator*(Scalar s, GroupAlgebraElement a) { return a *= s; }

  friend bool operator==(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    return a.carrier_ == b.carrier_ && a.coeffs_.size() == b.coeffs_.size() &&
           a.coeffs_ == b.coeffs_;
  }

  void check_compatible(const GroupAlgebraElement& o) const {
    if (carrier_ != o.carrier_ || coeffs_.size() != o.coeffs_.size())
      throw InputError(std::string("carrier mismatch: ") + to_string(carrier_) + " vs " +
                       to_string(o.carrier_));
  }

 private:
  Carrier carrier_ = Carrier::A;
  Coefficients coeffs_;
};

using AlgElem = GroupAlgebraElement<std::int64_t>;

// -- constructors ------------------------------------------------------------

template <typename Scalar = std::int64_t>
GroupAlgebraElement<Scalar> zero_element(Carrier c, std::size_t order) {
  return GroupAlgebraElement<Scalar>(c, static_cast<Eigen::Index>(order));
}

template <typename Scalar = std::int64_t>
GroupAlgebraElement<Scalar> from_set(Carrier c, std::size_t order, const ElementSet& s) {
  auto x = zero_element<Scalar>(c, order);
  for (Rank g : s) {
    if (g >= order) throw InputError("element rank " + std::to_string(g) + " out of range");
    x[g] += Scalar(1);
  }
  return x;
}

template <typename Scalar = std::int64_t>
GroupAlgebraElement<Scalar> from_set(const AbelianGroup& A, const ElementSet& s) {
  return from_set<Scalar>(Carrier::A, A.order(), s);
}

template <typename Scalar = std::int64_t>
GroupAlgebraElement<Scalar> from_set(const ExtensionSpec& G, const ElementSet& s) {
  return from_set<Scalar>(Carrier::G, G.order(), s);
}

/// Ā (or Ḡ): every coefficient 1.
template <typename Scalar = std::int64_t>
GroupAlgebraElement<Scalar> all_ones(Carrier c, std::size_t order) {
  auto x = zero_element<Scalar>(c, order);
  x.coeffs().setOnes();
  return x;
}

/// The identity element e of the group ring.
template <typename Scalar = std::int64_t>
GroupAlgebraElement<Scalar> unit(Carrier c, std::size_t order) {
  auto x = zero_element<Scalar>(c, order);
  x[0] = Scalar(1);
  return x;
}

// -- products ----------------------------------------------------------------

namespace detail {

template <typename Scalar>
void check_product_bound(const GroupAlgebraElement<Scalar>& x, const GroupAlgebraElement<Scalar>& y) {
  if constexpr (std::is_integral_v<Scalar>) {
    // |(x·y)[g]| <= ||x||_1 · max|y|; reject anything that could overflow.
    const auto l1 = x.coeffs().cwiseAbs().sum();
    const auto ymax = y.size() ? y.coeffs().cwiseAbs().maxCoeff() : Scalar(0);
    if (ymax != 0 && l1 > std::numeric_limits<Scalar>::max() / ymax)
      throw std::overflow_error("group-algebra product would overflow the coefficient type");
  }
}

template <typename Scalar, typename Mul>
GroupAlgebraElement<Scalar> convolve_with(const GroupAlgebraElement<Scalar>& x,
                                          const GroupAlgebraElement<Scalar>& y, Mul&& mul) {
  x.check_compatible(y);
  check_product_bound(x, y);
  GroupAlgebraElement<Scalar> out(x.carrier(), x.size());
  const ElementSet sx = x.support();
  const ElementSet sy = y.support();
  for (Rank u : sx)
    for (Rank v : sy) out[mul(u, v)] += x[u] * y[v];
  return out;
}

}  // namespace detail

/// (x·y)[g] = Σ_{u+v=g} x[u]·y[v] over A.
template <typename Scalar>
GroupAlgebraElement<Scalar> convolve(const AbelianGroup& A, const GroupAlgebraElement<Scalar>& x,
                                     const GroupAlgebraElement<Scalar>& y) {
  if (x.carrier() != Carrier::A || static_cast<std::size_t>(x.size()) != A.order())
    throw InputError("convolution over A needs elements carried by A");
  return detail::convolve_with(x, y, [&](Rank u, Rank v) { return A.add(u, v); });
}

/// (x·y)[g] = Σ_{uv=g} x[u]·y[v] over G; not commutative in general.
template <typename Scalar>
GroupAlgebraElement<Scalar> convolve(const ExtensionSpec& G, const GroupAlgebraElement<Scalar>& x,
                                     const GroupAlgebraElement<Scalar>& y) {
  if (x.carrier() != Carrier::G || static_cast<std::size_t>(x.size()) != G.order())
    throw InputError("convolution over G needs elements carried by G");
  return detail::convolve_with(x, y, [&](Rank u, Rank v) { return G.mul(u, v); });
}

/// f(Σ c_a a) = Σ c_a f(a).
template <typename Scalar>
GroupAlgebraElement<Scalar> f_image(const Involution& f, const GroupAlgebraElement<Scalar>& x) {
  if (x.carrier() != Carrier::A) throw InputError("f acts on elements carried by A");
  GroupAlgebraElement<Scalar> out(Carrier::A, x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[f(static_cast<Rank>(i))] += x[static_cast<Rank>(i)];
  return out;
}

/// x·g for a single group element g of A.
template <typename Scalar>
GroupAlgebraElement<Scalar> shifted(const AbelianGroup& A, const GroupAlgebraElement<Scalar>& x, Rank g) {
  GroupAlgebraElement<Scalar> out(x.carrier(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[A.add(static_cast<Rank>(i), g)] += x[static_cast<Rank>(i)];
  return out;
}

/// X̄⁻¹ = Σ c_a a⁻¹.
template <typename Scalar>
GroupAlgebraElement<Scalar> inverted(const AbelianGroup& A, const GroupAlgebraElement<Scalar>& x) {
  GroupAlgebraElement<Scalar> out(x.carrier(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[A.neg(static_cast<Rank>(i))] += x[static_cast<Rank>(i)];
  return out;
}

/// S̄⁻¹ over G.
template <typename Scalar>
GroupAlgebraElement<Scalar> inverted(const ExtensionSpec& G, const GroupAlgebraElement<Scalar>& x) {
  GroupAlgebraElement<Scalar> out(x.carrier(), x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out[G.inv(static_cast<Rank>(i))] += x[static_cast<Rank>(i)];
  return out;
}

}  // namespace dsrgkit
