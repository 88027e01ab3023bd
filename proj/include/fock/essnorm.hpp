#pragma once

#include "fock/classifier.hpp"

namespace fock {

/// Two-sided estimate of ||W_1 - W_2||_e on F^p -> F^q, 1 < p <= q < inf.
struct EssBounds {
  double lower = 0.0;
  ExtendedReal upper;
  double alpha = 0.0;
  double limsup1 = 0.0;
  double limsup2 = 0.0;
};

/// |w1 - w2|^2 / (2 (2 + |w1 - w2|^2)), in [0, 1/2).
double rho(Complex w1, Complex w2);

/// 1/2 if a1 != a2, rho(b1, b2) otherwise. Throws IdenticalMaps.
double alpha_pair(const AffineMap& phi1, const AffineMap& phi2);

/// 2 (q / (p |a|^2))^{1/q} limsup m_z(psi, phi).
ExtendedReal essnorm_upper_single(const OperatorSpec& spec, const Exponent& p, const Exponent& q);

EssBounds essnorm_bounds_difference(const PairSpec& pair, const Exponent& p, const Exponent& q);

}  // namespace fock
