#pragma once

// Seeded generators for property checks. Uniform draws are built from the raw
// 64-bit engine output so sequences are identical across standard libraries.

#include <cstdint>
#include <random>

#include "fock/symbols.hpp"

namespace fock {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  int integer(int lo, int hi);  // inclusive
  Complex in_disk(double radius);
  Complex on_circle(double radius);

  /// 1..max_terms terms, degrees <= max_degree, |s| <= max_freq, |c| <= max_coeff.
  ExpPolySymbol symbol(int max_terms = 2, int max_degree = 2, double max_freq = 1.0, double max_coeff = 2.0);

  /// Bounded on every F^p -> F^q with p <= q: either |a| in [0.1, 0.8] with an
  /// arbitrary small weight, or |a| = 1 with psi = c e^{-a conj(b) z}, or (if
  /// allowed) a constant map.
  OperatorSpec bounded_spec(bool allow_constant_map = true);
  PairSpec bounded_pair(bool allow_constant_map = true);

 private:
  std::mt19937_64 engine_;
};

}  // namespace fock
