#include "dsrgkit/abelian.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "dsrgkit/errors.hpp"

namespace dsrgkit {

namespace {

constexpr std::size_t kAddTableMaxOrder = 512;

int mod(std::int64_t a, int d) {
  const auto r = static_cast<int>(a % d);
  return r < 0 ? r + d : r;
}

}  // namespace

std::string to_string(const GroupVector& x) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (i) os << ',';
    os << x.coords[i];
  }
  os << ')';
  return os.str();
}

AbelianGroup AbelianGroup::make(std::vector<int> factors, const Limits& limits) {
  if (factors.empty()) throw InputError("group needs at least one cyclic factor");
  std::size_t order = 1;
  for (int d : factors) {
    if (d < 1) throw InputError("cyclic factor must be positive, got " + std::to_string(d));
    order *= static_cast<std::size_t>(d);
    if (order > limits.max_order)
      throw CapError("group order exceeds the configured cap " + std::to_string(limits.max_order));
  }
  AbelianGroup g;
  g.factors_ = std::move(factors);
  g.order_ = order;
  g.strides_.assign(g.factors_.size(), 1);
  for (std::size_t i = g.factors_.size(); i-- > 1;)
    g.strides_[i - 1] = g.strides_[i] * static_cast<Rank>(g.factors_[i]);

  if (order <= kAddTableMaxOrder) {
    auto table = std::make_shared<std::vector<Rank>>(order * order);
    for (Rank x = 0; x < order; ++x)
      for (Rank y = 0; y < order; ++y) (*table)[x * order + y] = g.add_digits(x, y);
    g.add_table_ = std::move(table);
  }
  return g;
}

bool AbelianGroup::contains(const GroupVector& x) const {
  if (x.coords.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (x.coords[i] < 0 || x.coords[i] >= factors_[i]) return false;
  return true;
}

void AbelianGroup::validate(const GroupVector& x) const {
  if (x.coords.size() != factors_.size())
    throw InputError("element " + to_string(x) + " has " + std::to_string(x.coords.size()) +
                     " coordinates, group has " + std::to_string(factors_.size()) + " factors");
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (x.coords[i] < 0 || x.coords[i] >= factors_[i])
      throw InputError("element " + to_string(x) + " coordinate " + std::to_string(i) +
                       " out of range [0," + std::to_string(factors_[i]) + ")");
}

GroupVector AbelianGroup::identity() const { return GroupVector{std::vector<int>(factors_.size(), 0)}; }

GroupVector AbelianGroup::add(const GroupVector& x, const GroupVector& y) const {
  validate(x);
  validate(y);
  GroupVector r{std::vector<int>(factors_.size())};
  for (std::size_t i = 0; i < factors_.size(); ++i)
    r.coords[i] = (x.coords[i] + y.coords[i]) % factors_[i];
  return r;
}

GroupVector AbelianGroup::neg(const GroupVector& x) const {
  validate(x);
  GroupVector r{std::vector<int>(factors_.size())};
  for (std::size_t i = 0; i < factors_.size(); ++i) r.coords[i] = mod(-x.coords[i], factors_[i]);
  return r;
}

GroupVector AbelianGroup::sub(const GroupVector& x, const GroupVector& y) const {
  return add(x, neg(y));
}

Rank AbelianGroup::rank(const GroupVector& x) const {
  validate(x);
  Rank r = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) r += static_cast<Rank>(x.coords[i]) * strides_[i];
  return r;
}

GroupVector AbelianGroup::unrank(Rank r) const {
  if (r >= order_) throw InputError("rank " + std::to_string(r) + " out of range");
  GroupVector x{std::vector<int>(factors_.size())};
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    x.coords[i] = static_cast<int>(r / strides_[i]);
    r %= strides_[i];
  }
  return x;
}

Rank AbelianGroup::add_digits(Rank x, Rank y) const {
  Rank r = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const Rank xi = x / strides_[i];
    const Rank yi = y / strides_[i];
    x %= strides_[i];
    y %= strides_[i];
    Rank s = xi + yi;
    if (s >= static_cast<Rank>(factors_[i])) s -= static_cast<Rank>(factors_[i]);
    r += s * strides_[i];
  }
  return r;
}

Rank AbelianGroup::add(Rank x, Rank y) const {
  if (add_table_) return (*add_table_)[x * order_ + y];
  return add_digits(x, y);
}

Rank AbelianGroup::neg(Rank x) const {
  Rank r = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const Rank xi = x / strides_[i];
    x %= strides_[i];
    r += (xi == 0 ? 0 : static_cast<Rank>(factors_[i]) - xi) * strides_[i];
  }
  return r;
}

Rank AbelianGroup::multiple(Rank x, std::int64_t k) const {
  Rank r = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::int64_t xi = x / strides_[i];
    x %= strides_[i];
    r += static_cast<Rank>(mod(xi * mod(k, factors_[i]), factors_[i])) * strides_[i];
  }
  return r;
}

std::int64_t AbelianGroup::element_order(Rank x) const {
  std::int64_t ord = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::int64_t xi = x / strides_[i];
    x %= strides_[i];
    const std::int64_t d = factors_[i];
    ord = std::lcm(ord, d / std::gcd(xi, d));
  }
  return ord;
}

std::vector<GroupVector> AbelianGroup::elements() const {
  std::vector<GroupVector> out;
  out.reserve(order_);
  for (Rank r = 0; r < order_; ++r) out.push_back(unrank(r));
  return out;
}

// ---------------------------------------------------------------------------

Involution Involution::make(const AbelianGroup& A, std::vector<GroupVector> images) {
  if (images.size() != A.dimension())
    throw InputError("involution needs one image per generator: expected " +
                     std::to_string(A.dimension()) + ", got " + std::to_string(images.size()));
  std::vector<Rank> image_ranks;
  for (const auto& img : images) image_ranks.push_back(A.rank(img));

  // g_i has order d_i, so its image must be killed by d_i.
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (A.multiple(image_ranks[i], A.factors()[i]) != 0)
      throw ValidationError("not a homomorphism: generator " + std::to_string(i) + " has order " +
                            std::to_string(A.factors()[i]) + " but its image " +
                            to_string(images[i]) + " does not");
  }

  Involution f;
  f.images_ = std::move(images);
  f.table_.resize(A.order());
  for (Rank x = 0; x < A.order(); ++x) {
    const GroupVector v = A.unrank(x);
    Rank y = 0;
    for (std::size_t i = 0; i < v.coords.size(); ++i)
      y = A.add(y, A.multiple(image_ranks[i], v.coords[i]));
    f.table_[x] = y;
  }

  std::vector<Rank> seen(A.order(), static_cast<Rank>(A.order()));
  for (Rank x = 0; x < A.order(); ++x) {
    if (seen[f.table_[x]] != A.order())
      throw ValidationError("not a bijection: " + to_string(A.unrank(seen[f.table_[x]])) + " and " +
                            to_string(A.unrank(x)) + " have the same image");
    seen[f.table_[x]] = x;
  }
  for (Rank x = 0; x < A.order(); ++x)
    if (f.table_[f.table_[x]] != x)
      throw ValidationError("f∘f is not the identity at " + to_string(A.unrank(x)));

  f.identity_ = true;
  for (Rank x = 0; x < A.order(); ++x)
    if (f.table_[x] != x) {
      f.identity_ = false;
      break;
    }
  return f;
}

Involution Involution::negation(const AbelianGroup& A) {
  std::vector<GroupVector> images;
  for (std::size_t i = 0; i < A.dimension(); ++i) {
    GroupVector g = A.identity();
    g.coords[i] = A.factors()[i] == 1 ? 0 : A.factors()[i] - 1;
    images.push_back(std::move(g));
  }
  return make(A, std::move(images));
}

Involution Involution::identity(const AbelianGroup& A) {
  std::vector<GroupVector> images;
  for (std::size_t i = 0; i < A.dimension(); ++i) {
    GroupVector g = A.identity();
    g.coords[i] = A.factors()[i] == 1 ? 0 : 1;
    images.push_back(std::move(g));
  }
  return make(A, std::move(images));
}

GroupVector Involution::apply(const AbelianGroup& A, const GroupVector& x) const {
  return A.unrank(table_[A.rank(x)]);
}

// ---------------------------------------------------------------------------

bool Subgroup::contains(Rank x) const { return dsrgkit::contains(elements, x); }

ElementSet normalized(ElementSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

bool contains(const ElementSet& s, Rank x) { return std::binary_search(s.begin(), s.end(), x); }

ElementSet set_union(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet set_intersection(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet set_difference(const ElementSet& a, const ElementSet& b) {
  ElementSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

ElementSet full_set(std::size_t order) {
  ElementSet s(order);
  std::iota(s.begin(), s.end(), Rank{0});
  return s;
}

ElementSet image(const Involution& f, const ElementSet& s) {
  ElementSet out;
  out.reserve(s.size());
  for (Rank x : s) out.push_back(f(x));
  return normalized(std::move(out));
}

ElementSet inverse(const AbelianGroup& A, const ElementSet& s) {
  ElementSet out;
  out.reserve(s.size());
  for (Rank x : s) out.push_back(A.neg(x));
  return normalized(std::move(out));
}

ElementSet translate(const AbelianGroup& A, const ElementSet& s, Rank by) {
  ElementSet out;
  out.reserve(s.size());
  for (Rank x : s) out.push_back(A.add(x, by));
  return normalized(std::move(out));
}

Subgroup subgroup_closure(const AbelianGroup& A, const ElementSet& generators) {
  std::vector<char> in(A.order(), 0);
  ElementSet members{0};
  in[0] = 1;
  // In a finite group, closure under addition of generators suffices.
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (Rank g : generators) {
      if (g >= A.order()) throw InputError("generator rank out of range");
      const Rank y = A.add(members[i], g);
      if (!in[y]) {
        in[y] = 1;
        members.push_back(y);
      }
    }
  }
  return Subgroup{normalized(std::move(members))};
}

bool is_subgroup(const AbelianGroup& A, const ElementSet& s) {
  if (!contains(s, 0)) return false;
  for (Rank x : s)
    for (Rank y : s)
      if (!contains(s, A.sub(x, y))) return false;
  return true;
}

std::vector<ElementSet> cosets(const AbelianGroup& A, const Subgroup& B) {
  std::vector<char> done(A.order(), 0);
  std::vector<ElementSet> out;
  for (Rank x = 0; x < A.order(); ++x) {
    if (done[x]) continue;
    ElementSet c = translate(A, B.elements, x);
    for (Rank y : c) done[y] = 1;
    out.push_back(std::move(c));
  }
  return out;
}

bool is_coset_union(const AbelianGroup& A, const Subgroup& B, const ElementSet& X) {
  for (Rank x : X)
    for (Rank b : B.elements)
      if (!contains(X, A.add(x, b))) return false;
  return true;
}

ElementSet generator_orbit(const AbelianGroup& A, Rank x) {
  const std::int64_t ord = A.element_order(x);
  ElementSet out;
  for (std::int64_t k = 1; k <= ord; ++k)
    if (std::gcd(k, ord) == 1) out.push_back(A.multiple(x, k));
  return normalized(std::move(out));
}

std::vector<ElementSet> generator_orbits(const AbelianGroup& A) {
  std::vector<char> done(A.order(), 0);
  std::vector<ElementSet> out;
  for (Rank x = 0; x < A.order(); ++x) {
    if (done[x]) continue;
    ElementSet o = generator_orbit(A, x);
    for (Rank y : o) done[y] = 1;
    out.push_back(std::move(o));
  }
  return out;
}

CosetPairing f_orbit_pairing(const AbelianGroup& A, const Subgroup& B, const Involution& f) {
  if (image(f, B.elements) != B.elements) throw PreconditionError("f(B) != B");
  CosetPairing out;
  const auto all = cosets(A, B);
  std::vector<char> used(all.size(), 0);
  for (std::size_t i = 1; i < all.size(); ++i) {  // index 0 is B itself
    if (used[i]) continue;
    const ElementSet fc = image(f, all[i]);
    if (fc == all[i]) {
      out.fixed.push_back(all[i]);
      used[i] = 1;
      continue;
    }
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (all[j] == fc) {
        out.pairs.emplace_back(all[i], all[j]);
        used[i] = used[j] = 1;
        break;
      }
  }
  return out;
}

}  // namespace dsrgkit
