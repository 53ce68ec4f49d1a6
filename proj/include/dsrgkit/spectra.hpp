#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "dsrgkit/abelian.hpp"
#include "dsrgkit/config.hpp"
#include "dsrgkit/extension.hpp"
#include "dsrgkit/group_algebra.hpp"

namespace dsrgkit {

using Complex = std::complex<double>;

/// χ_j(a) = Π ω_{d_i}^{j_i a_i}; exps = 0 is the trivial character.
struct Character {
  std::vector<int> exps;
};

/// The character whose exponent vector has the given rank.
Character character(const AbelianGroup& A, Rank index);

Complex char_eval(const AbelianGroup& A, const Character& chi, const AlgElem& x);

/// χ(x) for every character, in character-rank order (trivial first).
std::vector<Complex> character_values(const AbelianGroup& A, const AlgElem& x);

struct EigenvalueCluster {
  Complex value;
  std::size_t multiplicity = 0;
};

struct SpectrumReport {
  std::vector<Complex> values;            // raw, in the producer's order
  std::vector<EigenvalueCluster> grouped; // sorted by real part descending, then imaginary
  bool all_real = false;
  bool all_integral = false;
  std::optional<double> second_largest;   // real spectra only

  std::size_t distinct() const { return grouped.size(); }
};

/// Groups values at `grouping` and sets the flags at `flag_tolerance`.
SpectrumReport make_spectrum_report(std::vector<Complex> values, double grouping,
                                    double flag_tolerance);

/// Eigenvalues of Cay(A, S) for a multiset S, as character sums.
SpectrumReport cayley_eigenvalues_abelian(const AbelianGroup& A, const AlgElem& S,
                                          const Tolerance& tol = {});

/// Dense numeric eigenvalues of any square matrix.
SpectrumReport numeric_spectrum(const Eigen::MatrixXd& M, double flag_tolerance,
                                const Tolerance& tol = {});

/// Adjacency matrix of the Cayley multigraph Cay(A, S): a[x][y] = S[y − x].
Eigen::MatrixXd abelian_adjacency(const AbelianGroup& A, const AlgElem& S);

struct OrbitMultiplicity {
  ElementSet orbit;
  std::int64_t multiplicity = 0;
};

struct IntegralityReport {
  bool integral = false;
  /// One entry per generator orbit; empty when not integral.
  std::vector<OrbitMultiplicity> orbits;
  /// An orbit on which the multiplicity is not constant.
  std::optional<ElementSet> witness;
};

/// Cay(A, S) is integral iff S is constant on every generator orbit.
IntegralityReport is_integral(const AbelianGroup& A, const AlgElem& S);

/// Numeric spectrum of Cay(G, S); throws CapError above limits.spectrum_max_vertices.
SpectrumReport full_spectrum(const ExtensionSpec& G, const ElementSet& S,
                             const Limits& limits = Limits::from_environment(),
                             const Tolerance& tol = {});

struct MultipartiteVerdict {
  bool complete_multipartite = false;
  std::vector<ElementSet> parts;
  std::size_t part_size = 0;
  /// x, y, z with x,y and y,z non-adjacent but x,z adjacent.
  std::optional<std::array<Rank, 3>> witness;
};

/// Structural test: is the underlying simple graph of Cay(A, S) complete
/// multipartite? Requires S = S⁻¹ without the identity, and a connected graph.
MultipartiteVerdict complete_multipartite_check(const AbelianGroup& A, const AlgElem& S);

}  // namespace dsrgkit
