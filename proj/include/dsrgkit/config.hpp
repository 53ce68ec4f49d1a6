#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace dsrgkit {

/// Size caps. Every cap is checked before work proportional to it starts.
struct Limits {
  std::size_t max_order = std::size_t{1} << 20;       // |A|
  std::size_t oracle_max_vertices = 4096;             // 2n for the matrix oracle
  std::size_t spectrum_max_vertices = 1024;           // 2n for the dense eigensolver
  std::uint64_t census_max_candidates = std::uint64_t{1} << 26;

  /// Defaults, with DSRG_MAX_ORDER overriding max_order when set to a positive integer.
  static Limits from_environment() {
    Limits lim;
    if (const char* env = std::getenv("DSRG_MAX_ORDER")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) lim.max_order = static_cast<std::size_t>(v);
    }
    return lim;
  }
};

/// Numeric tolerances. Only screens and spectra use them; certificates are exact.
struct Tolerance {
  double character = 1e-8;  // scaled by the group order
  double grouping = 1e-6;   // absolute, for eigenvalue multiplicities

  double character_for(std::size_t order) const {
    return character * static_cast<double>(order == 0 ? 1 : order);
  }
};

}  // namespace dsrgkit
