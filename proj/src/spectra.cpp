#include "dsrgkit/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "dsrgkit/errors.hpp"

namespace dsrgkit {

namespace {

std::int64_t lcm_of(const std::vector<int>& factors) {
  std::int64_t l = 1;
  for (int d : factors) l = std::lcm(l, static_cast<std::int64_t>(d));
  return l;
}

// Roots of unity of order L and, per character, the exponent of ω_L at each
// element; evaluation is then a table lookup.
struct CharacterTable {
  std::int64_t L;
  std::vector<Complex> roots;
  std::vector<std::int64_t> weights;  // L / d_i

  explicit CharacterTable(const AbelianGroup& A) : L(lcm_of(A.factors())) {
    roots.resize(static_cast<std::size_t>(L));
    for (std::int64_t k = 0; k < L; ++k) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(L);
      roots[static_cast<std::size_t>(k)] = Complex(std::cos(th), std::sin(th));
    }
    for (int d : A.factors()) weights.push_back(L / d);
  }

  std::int64_t phase(const std::vector<int>& j, const GroupVector& a) const {
    std::int64_t p = 0;
    for (std::size_t i = 0; i < j.size(); ++i)
      p = (p + static_cast<std::int64_t>(j[i]) * a.coords[i] % L * weights[i]) % L;
    return p;
  }
};

double clean(double v, double tol) {
  if (std::abs(v) <= tol) return 0.0;
  const double r = std::round(v);
  if (std::abs(v - r) <= tol) return r;
  return v;
}

}  // namespace

Character character(const AbelianGroup& A, Rank index) { return Character{A.unrank(index).coords}; }

Complex char_eval(const AbelianGroup& A, const Character& chi, const AlgElem& x) {
  if (x.carrier() != Carrier::A || static_cast<std::size_t>(x.size()) != A.order())
    throw InputError("characters of A evaluate elements carried by A");
  A.validate(GroupVector{chi.exps});
  const CharacterTable table(A);
  Complex sum = 0.0;
  for (Rank g : x.support())
    sum += static_cast<double>(x[g]) * table.roots[static_cast<std::size_t>(table.phase(chi.exps, A.unrank(g)))];
  return sum;
}

std::vector<Complex> character_values(const AbelianGroup& A, const AlgElem& x) {
  if (x.carrier() != Carrier::A || static_cast<std::size_t>(x.size()) != A.order())
    throw InputError("characters of A evaluate elements carried by A");
  const CharacterTable table(A);
  const ElementSet supp = x.support();
  std::vector<GroupVector> points;
  for (Rank g : supp) points.push_back(A.unrank(g));
  std::vector<Complex> out(A.order());
  for (Rank j = 0; j < A.order(); ++j) {
    const auto exps = A.unrank(j).coords;
    Complex sum = 0.0;
    for (std::size_t i = 0; i < supp.size(); ++i)
      sum += static_cast<double>(x[supp[i]]) *
             table.roots[static_cast<std::size_t>(table.phase(exps, points[i]))];
    out[j] = sum;
  }
  return out;
}

SpectrumReport make_spectrum_report(std::vector<Complex> values, double grouping,
                                    double flag_tolerance) {
  SpectrumReport rep;
  rep.values = values;
  rep.all_real = std::all_of(values.begin(), values.end(),
                             [&](Complex v) { return std::abs(v.imag()) <= flag_tolerance; });
  rep.all_integral =
      rep.all_real && std::all_of(values.begin(), values.end(), [&](Complex v) {
        return std::abs(v.real() - std::round(v.real())) <= flag_tolerance;
      });

  std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() < b.imag();
  });
  if (rep.all_real && values.size() >= 2) rep.second_largest = values[1].real();

  for (Complex v : values) {
    auto it = std::find_if(rep.grouped.begin(), rep.grouped.end(),
                           [&](const EigenvalueCluster& c) { return std::abs(c.value - v) <= grouping; });
    if (it == rep.grouped.end())
      rep.grouped.push_back({v, 1});
    else
      ++it->multiplicity;
  }
  for (auto& c : rep.grouped)
    c.value = Complex(clean(c.value.real(), flag_tolerance), clean(c.value.imag(), flag_tolerance));
  std::sort(rep.grouped.begin(), rep.grouped.end(), [](const EigenvalueCluster& a, const EigenvalueCluster& b) {
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() < b.value.imag();
  });
  return rep;
}

SpectrumReport cayley_eigenvalues_abelian(const AbelianGroup& A, const AlgElem& S, const Tolerance& tol) {
  return make_spectrum_report(character_values(A, S), tol.grouping, tol.character_for(A.order()));
}

SpectrumReport numeric_spectrum(const Eigen::MatrixXd& M, double flag_tolerance, const Tolerance& tol) {
  if (M.rows() != M.cols()) throw InputError("spectrum needs a square matrix");
  Eigen::EigenSolver<Eigen::MatrixXd> solver(M, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<Complex> values(ev.data(), ev.data() + ev.size());
  return make_spectrum_report(std::move(values), tol.grouping, flag_tolerance);
}

Eigen::MatrixXd abelian_adjacency(const AbelianGroup& A, const AlgElem& S) {
  const auto n = static_cast<Eigen::Index>(A.order());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (Rank x = 0; x < A.order(); ++x)
    for (Rank s : S.support()) M(x, A.add(s, x)) += static_cast<double>(S[s]);
  return M;
}

IntegralityReport is_integral(const AbelianGroup& A, const AlgElem& S) {
  IntegralityReport rep;
  rep.integral = true;
  for (auto& orbit : generator_orbits(A)) {
    const std::int64_t m = S[orbit.front()];
    const bool constant = std::all_of(orbit.begin(), orbit.end(), [&](Rank y) { return S[y] == m; });
    if (!constant) {
      rep.integral = false;
      rep.orbits.clear();
      rep.witness = std::move(orbit);
      return rep;
    }
    rep.orbits.push_back({std::move(orbit), m});
  }
  return rep;
}

SpectrumReport full_spectrum(const ExtensionSpec& G, const ElementSet& S, const Limits& limits,
                             const Tolerance& tol) {
  if (G.order() > limits.spectrum_max_vertices)
    throw CapError("graph order " + std::to_string(G.order()) + " exceeds the spectrum cap " +
                   std::to_string(limits.spectrum_max_vertices));
  const auto N = static_cast<Eigen::Index>(G.order());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
  for (Rank x = 0; x < G.order(); ++x)
    for (Rank s : S) M(x, G.mul(s, x)) = 1.0;
  return numeric_spectrum(M, tol.grouping, tol);
}

MultipartiteVerdict complete_multipartite_check(const AbelianGroup& A, const AlgElem& S) {
  if (S.carrier() != Carrier::A || static_cast<std::size_t>(S.size()) != A.order())
    throw InputError("connection multiset must be carried by A");
  if (S[0] != 0) throw PreconditionError("connection multiset contains the identity");
  for (Rank x = 0; x < A.order(); ++x)
    if (S[x] != S[A.neg(x)])
      throw PreconditionError("graph is directed: multiplicity of " + to_string(A.unrank(x)) +
                              " differs from its inverse");
  for (Rank x = 0; x < A.order(); ++x)
    if (S[x] < 0) throw PreconditionError("negative multiplicity");

  const ElementSet supp = S.support();
  const auto n = A.order();

  // Connectivity of the underlying simple graph.
  std::vector<char> seen(n, 0);
  std::deque<Rank> queue{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const Rank x = queue.front();
    queue.pop_front();
    for (Rank s : supp) {
      const Rank y = A.add(x, s);
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        queue.push_back(y);
      }
    }
  }
  if (reached != n) throw PreconditionError("graph is disconnected");

  auto adjacent = [&](Rank x, Rank y) { return x != y && S[A.sub(y, x)] != 0; };

  // Components of the complement must all be cliques of the complement.
  MultipartiteVerdict v;
  std::vector<int> comp(n, -1);
  for (Rank start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const int id = static_cast<int>(v.parts.size());
    ElementSet part{start};
    comp[start] = id;
    for (std::size_t i = 0; i < part.size(); ++i)
      for (Rank y = 0; y < n; ++y)
        if (comp[y] < 0 && y != part[i] && !adjacent(part[i], y)) {
          comp[y] = id;
          part.push_back(y);
        }
    v.parts.push_back(normalized(std::move(part)));
  }
  // A complement component that is not a complement clique contains a vertex
  // at complement distance two from another: that pair is adjacent.
  for (const auto& part : v.parts)
    for (Rank x : part)
      for (Rank y : part) {
        if (y == x || adjacent(x, y)) continue;
        for (Rank z : part)
          if (z != x && z != y && !adjacent(y, z) && adjacent(x, z)) {
            v.witness = std::array<Rank, 3>{x, y, z};
            v.complete_multipartite = false;
            v.parts.clear();
            return v;
          }
      }
  v.complete_multipartite = true;
  v.part_size = v.parts.front().size();
  for (const auto& part : v.parts)
    if (part.size() != v.part_size) v.part_size = 0;
  return v;
}

}  // namespace dsrgkit
