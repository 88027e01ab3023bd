#include "fock/essnorm.hpp"

#include <cmath>

#include "fock/error.hpp"

namespace fock {

namespace {

void require_exponents(const Exponent& p, const Exponent& q) {
  if (p.is_infinite() || q.is_infinite())
    throw Error(ErrorCode::UnsupportedExponents, "essential-norm bounds need finite p and q");
  if (p <= Exponent(1.0)) throw Error(ErrorCode::UnsupportedExponents, "essential-norm bounds need p > 1");
  if (q < p) throw Error(ErrorCode::UnsupportedExponents, "essential-norm bounds need p <= q");
}

}  // namespace

double rho(Complex w1, Complex w2) {
  const double d2 = std::norm(w1 - w2);
  if (std::isinf(d2)) return 0.5;
  return d2 / (2.0 * (2.0 + d2));
}

double alpha_pair(const AffineMap& phi1, const AffineMap& phi2) {
  if (phi1 == phi2) throw Error(ErrorCode::IdenticalMaps, "alpha is undefined for identical maps");
  if (phi1.a != phi2.a) return 0.5;
  return rho(phi1.b, phi2.b);
}

ExtendedReal essnorm_upper_single(const OperatorSpec& spec, const Exponent& p, const Exponent& q) {
  require_exponents(p, q);
  if (spec.phi.a == Complex{})
    throw Error(ErrorCode::ReducesToSingle, "upper estimate needs a != 0");
  const auto lim = limsup_m(spec.psi, spec.phi);
  if (lim.is_infinite()) return ExtendedReal::infinity();
  const double scale = 2.0 * std::pow(q.value() / (p.value() * std::norm(spec.phi.a)), 1.0 / q.value());
  return scale * lim.value();
}

EssBounds essnorm_bounds_difference(const PairSpec& pair, const Exponent& p, const Exponent& q) {
  require_exponents(p, q);
  const auto& [first, second] = pair;
  if (first.phi == second.phi) throw Error(ErrorCode::IdenticalMaps, "phi1 and phi2 coincide");
  if (first.psi.is_zero() || second.psi.is_zero())
    throw Error(ErrorCode::ReducesToSingle, "a zero weight reduces the difference to a single operator");
  if (first.phi.a == Complex{} || second.phi.a == Complex{})
    throw Error(ErrorCode::ReducesToSingle, "a_j = 0 makes W_j compact; use single-operator estimates");
  const auto verdict = classify_difference(pair, p, q);
  if (verdict.verdict == Verdict::Unbounded)
    throw Error(ErrorCode::NotBounded, "the difference is unbounded: " + verdict.reason);

  EssBounds out;
  out.alpha = alpha_pair(first.phi, second.phi);
  // Each m_z(psi_j, phi_j) converges (to 0 or a constant) in this family, so
  // the limsup of the sum is the sum of the limits.
  out.limsup1 = limsup_m(first.psi, first.phi).value();
  out.limsup2 = limsup_m(second.psi, second.phi).value();
  out.lower = out.alpha * (out.limsup1 + out.limsup2);
  out.upper = essnorm_upper_single(first, p, q).value() + essnorm_upper_single(second, p, q).value();
  return out;
}

}  // namespace fock
