#include "fock/sampling.hpp"

#include <cmath>
#include <numbers>

namespace fock {

double Sampler::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int Sampler::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(engine_() % span);
}

Complex Sampler::in_disk(double radius) {
  return std::polar(radius * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * std::numbers::pi));
}

Complex Sampler::on_circle(double radius) { return std::polar(radius, uniform(0.0, 2.0 * std::numbers::pi)); }

ExpPolySymbol Sampler::symbol(int max_terms, int max_degree, double max_freq, double max_coeff) {
  std::vector<ExpPolyTerm> terms;
  const int n = integer(1, max_terms);
  for (int j = 0; j < n; ++j) {
    ExpPolyTerm t;
    t.freq = j == 0 && integer(0, 2) == 0 ? Complex{} : in_disk(max_freq);
    const int d = integer(0, max_degree);
    for (int k = 0; k <= d; ++k) t.coeffs.push_back(in_disk(max_coeff));
    // keep the leading coefficient away from zero
    t.coeffs.back() += std::polar(0.25, uniform(0.0, 2.0 * std::numbers::pi));
    terms.push_back(std::move(t));
  }
  return ExpPolySymbol(std::move(terms));
}

OperatorSpec Sampler::bounded_spec(bool allow_constant_map) {
  const int kind = integer(0, allow_constant_map ? 4 : 3);
  OperatorSpec spec;
  if (kind <= 1) {
    spec.phi = {std::polar(uniform(0.1, 0.8), uniform(0.0, 2.0 * std::numbers::pi)), in_disk(1.0)};
    spec.psi = symbol();
  } else if (kind <= 3) {
    const Complex a = on_circle(1.0);
    const Complex b = in_disk(1.0);
    spec.phi = {a, b};
    spec.psi = ExpPolySymbol::exponential(-a * std::conj(b), std::polar(uniform(0.5, 2.0), uniform(0.0, 6.28)));
  } else {
    spec.phi = AffineMap::constant(in_disk(1.5));
    spec.psi = symbol();
  }
  return spec;
}

PairSpec Sampler::bounded_pair(bool allow_constant_map) {
  PairSpec pair{bounded_spec(allow_constant_map), bounded_spec(allow_constant_map)};
  return pair;
}

}  // namespace fock
