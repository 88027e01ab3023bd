#pragma once

#include <optional>

#include "fock/symbols.hpp"

namespace fock {

/// Polar quadrature over C: Gauss-Legendre in r on [0, radial_max], periodic
/// trapezoid in theta. An unset radial_max means "derive from the symbol";
/// in that mode node counts are raised as needed and the radius is grown when
/// the tail bound is not small enough.
struct QuadConfig {
  std::optional<double> radial_max;
  int radial_nodes = 256;
  int angular_nodes = 128;
  double rel_tol = 1e-8;

  void validate() const;
};

/// Configuration the auto mode starts from for symbol f in F^p.
QuadConfig default_quad(const ExpPolySymbol& f, double p);

double log_gamma(double x);

/// ||z^n||_p = (2/p)^{n/2} Gamma(np/2 + 1)^{1/p}, evaluated in log space.
double monomial_norm(int n, double p);
double log_monomial_norm(int n, double p);

/// (n/e)^{n/2} (pi p n)^{1/(2p)}.
double monomial_norm_asymptotic(int n, double p);
double log_monomial_norm_asymptotic(int n, double p);

struct NormEstimate {
  double value = 0.0;
  double tail_rel = 0.0;        // analytic tail bound, relative to value
  double resolution_rel = 0.0;  // |full - coarse| / full, coarse = half nodes
  QuadConfig used;
};

/// ((p / 2 pi) int |f|^p e^{-p|z|^2/2} dA)^{1/p}. Throws TailNotNegligible.
double norm_p(const ExpPolySymbol& f, double p, const QuadConfig& cfg = {});
NormEstimate norm_p_detailed(const ExpPolySymbol& f, double p, const QuadConfig& cfg = {});

/// sup |f(z)| e^{-|z|^2/2}. Every exp-poly symbol has finite sup norm, so
/// the +inf branch is only reachable through the growth test, not numerically.
double norm_sup(const ExpPolySymbol& f, const QuadConfig& cfg = {});

/// e^{|z|^2/2} ||f||_p - |f(z)|; nonnegative for every f in F^p.
double pointwise_bound_margin(const ExpPolySymbol& f, double p, Complex z, const QuadConfig& cfg = {});

}  // namespace fock
