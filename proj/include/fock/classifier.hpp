#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fock/exponent.hpp"
#include "fock/symbols.hpp"

namespace fock {

/// Nonnegative real or +inf.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  static constexpr ExtendedReal infinity() { return ExtendedReal(std::numeric_limits<double>::infinity()); }

  constexpr double value() const { return value_; }
  constexpr bool is_infinite() const { return value_ == std::numeric_limits<double>::infinity(); }
  constexpr bool is_finite() const { return !is_infinite(); }

 private:
  double value_ = 0.0;
};

/// log m_z = log|sum_j Q_j(z) e^{lambda_j z}| + quad_coeff |z|^2 + |b|^2/2,
/// lambda_j = s_j + a conj(b).
struct GrowthProfile {
  struct Term {
    Complex lambda;
    int degree;
  };
  double quad_coeff = 0.0;
  std::vector<Term> terms;
  double log_const = 0.0;  // |b|^2/2 + log(sum of |coefficients|)
  bool unit_slope = false; // |a| = 1 up to 1e-12
};

enum class Verdict { Unbounded, BoundedNotCompact, Compact, IndeterminateSymbolic };

const char* verdict_name(Verdict v);

struct Classification {
  Verdict verdict = Verdict::IndeterminateSymbolic;
  std::string branch;  // which criterion decided it
  std::string reason;
  std::optional<ExtendedReal> sup;
  std::optional<ExtendedReal> limsup;
};

/// |psi(z)| e^{(|phi(z)|^2 - |z|^2)/2}, computed in log space.
double m_value(const ExpPolySymbol& psi, const AffineMap& phi, Complex z);
double log_m_value(const ExpPolySymbol& psi, const AffineMap& phi, Complex z);

GrowthProfile growth_profile(const ExpPolySymbol& psi, const AffineMap& phi);

ExtendedReal sup_m(const ExpPolySymbol& psi, const AffineMap& phi);
ExtendedReal limsup_m(const ExpPolySymbol& psi, const AffineMap& phi);
bool integrable_m(const ExpPolySymbol& psi, const AffineMap& phi, double r);

Classification classify_single(const OperatorSpec& spec, const Exponent& p, const Exponent& q);
/// W_1 - W_2. Requires p <= q unless the pair reduces or both weights are
/// constants (then it is a combination of composition operators).
Classification classify_difference(const PairSpec& pair, const Exponent& p, const Exponent& q);
/// c1 C_{phi1} + c2 C_{phi2}, q < p.
Classification classify_combination(Complex c1, const AffineMap& phi1, Complex c2, const AffineMap& phi2,
                                    const Exponent& p, const Exponent& q);

namespace detail {
bool is_unit_modulus(Complex a);
}

}  // namespace fock
