#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dsrgkit/config.hpp"

namespace dsrgkit {

/// Index of an element in the canonical (lexicographic) enumeration of a group.
using Rank = std::uint32_t;

/// A set of group elements as sorted, duplicate-free ranks.
using ElementSet = std::vector<Rank>;

/// Exponent vector of an element of Z_{d1} x ... x Z_{dm}, always reduced.
struct GroupVector {
  std::vector<int> coords;

  friend bool operator==(const GroupVector&, const GroupVector&) = default;
  friend auto operator<=>(const GroupVector&, const GroupVector&) = default;
};

std::string to_string(const GroupVector& x);

/// A finite abelian group given as a product of cyclic factors.
///
/// Elements are exponent vectors; ranks enumerate them lexicographically with
/// the first coordinate most significant, so rank 0 is the identity.
class AbelianGroup {
 public:
  static AbelianGroup make(std::vector<int> factors,
                           const Limits& limits = Limits::from_environment());

  const std::vector<int>& factors() const { return factors_; }
  std::size_t dimension() const { return factors_.size(); }
  std::size_t order() const { return order_; }

  bool contains(const GroupVector& x) const;
  /// Throws InputError on wrong length or out-of-range coordinates.
  void validate(const GroupVector& x) const;

  GroupVector identity() const;
  GroupVector add(const GroupVector& x, const GroupVector& y) const;
  GroupVector neg(const GroupVector& x) const;
  GroupVector sub(const GroupVector& x, const GroupVector& y) const;

  Rank rank(const GroupVector& x) const;
  GroupVector unrank(Rank r) const;

  Rank add(Rank x, Rank y) const;
  Rank neg(Rank x) const;
  Rank sub(Rank x, Rank y) const { return add(x, neg(y)); }
  Rank multiple(Rank x, std::int64_t k) const;
  /// Order of the cyclic subgroup generated by x.
  std::int64_t element_order(Rank x) const;

  std::vector<GroupVector> elements() const;

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.factors_ == b.factors_;
  }

 private:
  AbelianGroup() = default;
  Rank add_digits(Rank x, Rank y) const;

  std::vector<int> factors_;
  std::vector<Rank> strides_;
  std::size_t order_ = 1;
  // Cayley table of small groups, shared between copies.
  std::shared_ptr<const std::vector<Rank>> add_table_;
};

/// An automorphism f of A with f∘f = id, given by the images of the standard
/// generators and stored as a permutation of ranks.
class Involution {
 public:
  /// Validates the homomorphism, bijectivity, and f∘f = id; throws
  /// ValidationError naming a witness otherwise.
  static Involution make(const AbelianGroup& A, std::vector<GroupVector> images);
  static Involution negation(const AbelianGroup& A);
  static Involution identity(const AbelianGroup& A);

  const std::vector<GroupVector>& images() const { return images_; }
  Rank operator()(Rank x) const { return table_[x]; }
  GroupVector apply(const AbelianGroup& A, const GroupVector& x) const;

  /// f = id: the extension built on it is abelian.
  bool is_identity() const { return identity_; }
  const std::vector<Rank>& table() const { return table_; }

 private:
  std::vector<GroupVector> images_;
  std::vector<Rank> table_;
  bool identity_ = false;
};

struct Subgroup {
  ElementSet elements;

  std::size_t order() const { return elements.size(); }
  bool contains(Rank x) const;
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

// Sorted-set helpers.
ElementSet normalized(ElementSet s);
bool contains(const ElementSet& s, Rank x);
ElementSet set_union(const ElementSet& a, const ElementSet& b);
ElementSet set_intersection(const ElementSet& a, const ElementSet& b);
ElementSet set_difference(const ElementSet& a, const ElementSet& b);
ElementSet full_set(std::size_t order);
ElementSet image(const Involution& f, const ElementSet& s);
ElementSet inverse(const AbelianGroup& A, const ElementSet& s);
ElementSet translate(const AbelianGroup& A, const ElementSet& s, Rank by);

Subgroup subgroup_closure(const AbelianGroup& A, const ElementSet& generators);
bool is_subgroup(const AbelianGroup& A, const ElementSet& s);
/// The [A:B] cosets, each sorted, ordered by smallest element.
std::vector<ElementSet> cosets(const AbelianGroup& A, const Subgroup& B);
bool is_coset_union(const AbelianGroup& A, const Subgroup& B, const ElementSet& X);
/// {y : <y> = <x>}.
ElementSet generator_orbit(const AbelianGroup& A, Rank x);
/// All generator orbits, ordered by smallest element; they partition A.
std::vector<ElementSet> generator_orbits(const AbelianGroup& A);

/// The non-B cosets split into f-orbits: swapped pairs {C, f(C)} and f-fixed
/// cosets. Pairs are ordered by smallest element, first member smaller.
struct CosetPairing {
  std::vector<std::pair<ElementSet, ElementSet>> pairs;
  std::vector<ElementSet> fixed;
};
CosetPairing f_orbit_pairing(const AbelianGroup& A, const Subgroup& B, const Involution& f);

}  // namespace dsrgkit
