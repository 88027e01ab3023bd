#include "fock/classifier.hpp"

#include <cassert>
#include <cmath>

#include "fock/error.hpp"
#include "maximize.hpp"

namespace fock {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Unbounded: return "Unbounded";
    case Verdict::BoundedNotCompact: return "BoundedNotCompact";
    case Verdict::Compact: return "Compact";
    case Verdict::IndeterminateSymbolic: return "IndeterminateSymbolic";
  }
  return "?";
}

namespace detail {
bool is_unit_modulus(Complex a) { return std::abs(std::norm(a) - 1.0) <= 1e-12; }
}  // namespace detail

namespace {

void require_weight(const ExpPolySymbol& psi) {
  if (psi.is_zero()) throw Error(ErrorCode::ZeroWeight, "weight psi is identically zero");
}

void require_finite(const Exponent& p, const Exponent& q) {
  if (p.is_infinite() || q.is_infinite())
    throw Error(ErrorCode::UnsupportedExponents, "classification needs finite exponents p, q");
}

bool expanding(const AffineMap& phi) { return !detail::is_unit_modulus(phi.a) && std::norm(phi.a) > 1.0; }

bool contracting(const AffineMap& phi) { return !detail::is_unit_modulus(phi.a) && std::norm(phi.a) < 1.0; }

// |a| = 1: m_z = e^{|b|^2/2} |g(z)| with g = sum Q_j e^{lambda_j z} entire.
// g is bounded iff it is constant (Liouville); distinct lambda_j keep the
// terms linearly independent, so that means one degree-0 term with lambda = 0.
std::optional<double> unit_slope_constant(const ExpPolySymbol& psi, const AffineMap& phi) {
  const auto terms = psi.terms();
  if (terms.size() != 1 || terms[0].degree() != 0) return std::nullopt;
  const Complex shift = phi.a * std::conj(phi.b);
  const Complex lambda = terms[0].freq + shift;
  if (std::abs(lambda) > 1e-12 * (1.0 + std::abs(terms[0].freq) + std::abs(shift))) return std::nullopt;
  return std::abs(terms[0].coeffs[0]) * std::exp(0.5 * std::norm(phi.b));
}

Verdict meet(Verdict x, Verdict y) {
  if (x == Verdict::Unbounded || y == Verdict::Unbounded) return Verdict::Unbounded;
  if (x == Verdict::IndeterminateSymbolic || y == Verdict::IndeterminateSymbolic)
    return Verdict::IndeterminateSymbolic;
  if (x == Verdict::Compact && y == Verdict::Compact) return Verdict::Compact;
  return Verdict::BoundedNotCompact;
}

}  // namespace

double log_m_value(const ExpPolySymbol& psi, const AffineMap& phi, Complex z) {
  // |az+b|^2 - |z|^2 expanded to avoid cancellation at large |z|.
  const double growth = (std::norm(phi.a) - 1.0) * std::norm(z) + 2.0 * (phi.a * z * std::conj(phi.b)).real() +
                        std::norm(phi.b);
  return psi.log_abs(z) + 0.5 * growth;
}

double m_value(const ExpPolySymbol& psi, const AffineMap& phi, Complex z) {
  return std::exp(log_m_value(psi, phi, z));
}

GrowthProfile growth_profile(const ExpPolySymbol& psi, const AffineMap& phi) {
  require_weight(psi);
  GrowthProfile g;
  g.unit_slope = detail::is_unit_modulus(phi.a);
  g.quad_coeff = g.unit_slope ? 0.0 : 0.5 * (std::norm(phi.a) - 1.0);
  const Complex shift = phi.a * std::conj(phi.b);
  for (const auto& t : psi.terms()) g.terms.push_back({t.freq + shift, t.degree()});
  g.log_const = 0.5 * std::norm(phi.b) + std::log(psi.coeff_l1());
  return g;
}

ExtendedReal sup_m(const ExpPolySymbol& psi, const AffineMap& phi) {
  const auto profile = growth_profile(psi, phi);
  if (profile.unit_slope) {
    if (auto c = unit_slope_constant(psi, phi)) return *c;
    return ExtendedReal::infinity();
  }
  if (profile.quad_coeff > 0.0) return ExtendedReal::infinity();

  double beta = 0.0;
  std::vector<Complex> seeds;
  for (const auto& t : profile.terms) {
    beta = std::max(beta, std::abs(t.lambda));
    // maximizer of Re(lambda z) + quad |z|^2
    seeds.push_back(std::conj(t.lambda) / (-2.0 * profile.quad_coeff));
  }
  detail::RadialEnvelope env{profile.log_const, static_cast<double>(psi.max_degree()), beta, profile.quad_coeff};
  const auto best = detail::maximize_log([&](Complex z) { return log_m_value(psi, phi, z); }, env, seeds);
  return std::exp(best.log_value);
}

ExtendedReal limsup_m(const ExpPolySymbol& psi, const AffineMap& phi) {
  const auto profile = growth_profile(psi, phi);
  if (profile.unit_slope) {
    if (auto c = unit_slope_constant(psi, phi)) return *c;
    return ExtendedReal::infinity();
  }
  if (profile.quad_coeff < 0.0) return 0.0;
  return ExtendedReal::infinity();
}

bool integrable_m(const ExpPolySymbol& psi, const AffineMap& phi, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::Domain, "integrability exponent must be positive");
  const auto profile = growth_profile(psi, phi);
  return !profile.unit_slope && profile.quad_coeff < 0.0;
}

Classification classify_single(const OperatorSpec& spec, const Exponent& p, const Exponent& q) {
  require_finite(p, q);
  Classification c;
  const auto& [psi, phi] = spec;
  if (psi.is_zero()) {
    c.verdict = Verdict::Compact;
    c.branch = "zero weight";
    c.reason = "psi = 0 gives the zero operator";
    c.sup = 0.0;
    c.limsup = 0.0;
    return c;
  }
  if (phi.a == Complex{}) {
    c.verdict = Verdict::Compact;
    c.branch = "constant map";
    c.reason = "phi is constant and every exp-poly weight lies in F^q";
    c.sup = sup_m(psi, phi);
    c.limsup = 0.0;
    return c;
  }
  if (expanding(phi)) {
    c.verdict = Verdict::Unbounded;
    c.branch = "expanding map";
    c.reason = "|a| > 1, so m(psi, phi) = +inf";
    c.sup = ExtendedReal::infinity();
    c.limsup = ExtendedReal::infinity();
    return c;
  }
  if (p <= q) {
    c.branch = "single operator, p <= q: sup/limit criterion";
    c.sup = sup_m(psi, phi);
    c.limsup = limsup_m(psi, phi);
    if (c.sup->is_infinite()) {
      c.verdict = Verdict::Unbounded;
      c.reason = "m(psi, phi) = +inf";
    } else if (c.limsup->value() == 0.0) {
      c.verdict = Verdict::Compact;
      c.reason = "m_z(psi, phi) -> 0 as |z| -> inf";
    } else {
      c.verdict = Verdict::BoundedNotCompact;
      c.reason = "m(psi, phi) finite, m_z(psi, phi) does not vanish at infinity";
    }
    assert(c.verdict != Verdict::Compact || c.sup->is_finite());
    return c;
  }
  const double r = p.value() * q.value() / (p.value() - q.value());
  c.branch = "single operator, q < p: integrability criterion";
  c.limsup = limsup_m(psi, phi);
  if (integrable_m(psi, phi, r)) {
    c.verdict = Verdict::Compact;
    c.reason = "m_z(psi, phi) in L^r(C) with r = pq/(p-q) = " + std::to_string(r);
    c.sup = sup_m(psi, phi);
  } else {
    c.verdict = Verdict::Unbounded;
    c.reason = "m_z(psi, phi) not in L^r(C) with r = pq/(p-q) = " + std::to_string(r);
  }
  return c;
}

Classification classify_combination(Complex c1, const AffineMap& phi1, Complex c2, const AffineMap& phi2,
                                    const Exponent& p, const Exponent& q) {
  require_finite(p, q);
  if (p <= q)
    throw Error(ErrorCode::UnsupportedExponents,
                "combination criterion needs q < p; use the difference classifier for p <= q");
  auto reduced = [&](const OperatorSpec& spec, const std::string& why) {
    auto c = classify_single(spec, p, q);
    c.branch = "reduction (" + why + "): " + c.branch;
    return c;
  };
  if (phi1 == phi2) return reduced({ExpPolySymbol::constant(c1 + c2), phi1}, "equal maps");
  if (c1 == Complex{}) return reduced({ExpPolySymbol::constant(c2), phi2}, "c1 = 0");
  if (c2 == Complex{}) return reduced({ExpPolySymbol::constant(c1), phi1}, "c2 = 0");

  Classification c;
  c.branch = "combination of composition operators, q < p";
  if (contracting(phi1) && contracting(phi2)) {
    c.verdict = Verdict::Compact;
    c.reason = "|a1| < 1 and |a2| < 1: both C_phi compact, hence the combination is compact";
    c.limsup = 0.0;
  } else {
    c.verdict = Verdict::Unbounded;
    c.reason = "some |a_j| >= 1: bounded, compact and both-compact are equivalent and fail";
  }
  return c;
}

Classification classify_difference(const PairSpec& pair, const Exponent& p, const Exponent& q) {
  require_finite(p, q);
  auto reduced = [&](const OperatorSpec& spec, const std::string& why) {
    auto c = classify_single(spec, p, q);
    c.branch = "reduction (" + why + "): " + c.branch;
    return c;
  };
  const auto& [first, second] = pair;
  if (first.phi == second.phi) return reduced({first.psi - second.psi, first.phi}, "equal maps");
  if (first.psi.is_zero()) return reduced(second, "psi1 = 0");
  if (second.psi.is_zero()) return reduced(first, "psi2 = 0");

  if (q < p) {
    Complex c1, c2;
    if (first.psi.is_constant(&c1) && second.psi.is_constant(&c2))
      return classify_combination(c1, first.phi, -c2, second.phi, p, q);
    throw Error(ErrorCode::UnsupportedExponents,
                "no criterion is known for differences of weighted composition operators with q < p");
  }

  const auto s1 = classify_single(first, p, q);
  const auto s2 = classify_single(second, p, q);
  Classification c;
  c.verdict = meet(s1.verdict, s2.verdict);
  switch (c.verdict) {
    case Verdict::Unbounded: c.branch = "difference, p <= q: some single unbounded"; break;
    case Verdict::Compact: c.branch = "difference, p <= q: both-compact"; break;
    case Verdict::BoundedNotCompact: c.branch = "difference, p <= q: both-bounded"; break;
    case Verdict::IndeterminateSymbolic: c.branch = "difference, p <= q: indeterminate"; break;
  }
  c.reason = std::string("first: ") + verdict_name(s1.verdict) + " (" + s1.reason + "); second: " +
             verdict_name(s2.verdict) + " (" + s2.reason + ")";
  return c;
}

}  // namespace fock
