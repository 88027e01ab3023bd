#pragma once

// Exp-poly symbols: finite sums  sum_j Q_j(z) exp(s_j z)  with polynomial Q_j.
// The family is closed under weighted composition with affine maps and under
// subtraction, which is what the classifier and the oracles rely on.

#include <complex>
#include <span>
#include <vector>

namespace fock {

using Complex = std::complex<double>;

/// phi(z) = a z + b.
struct AffineMap {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};

  static AffineMap identity() { return {}; }
  static AffineMap constant(Complex value) { return {Complex{}, value}; }

  Complex operator()(Complex z) const { return a * z + b; }
  bool operator==(const AffineMap&) const = default;
};

Complex eval_affine(const AffineMap& phi, Complex z);

struct ExpPolyTerm {
  std::vector<Complex> coeffs;  // coeffs[k] multiplies z^k
  Complex freq;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Immutable once built. Terms are kept normalized: pairwise distinct
/// frequencies (merge tolerance 1e-12 (1 + |s|)), no zero terms, no trailing
/// zero coefficients, sorted by frequency.
class ExpPolySymbol {
 public:
  ExpPolySymbol() = default;
  explicit ExpPolySymbol(std::vector<ExpPolyTerm> terms);

  static ExpPolySymbol zero() { return {}; }
  static ExpPolySymbol constant(Complex c);
  static ExpPolySymbol monomial(int n, Complex c = 1.0);
  static ExpPolySymbol exponential(Complex s, Complex c = 1.0);
  /// K_w(z) = exp(conj(w) z).
  static ExpPolySymbol kernel(Complex w);
  /// k_w(z) = exp(conj(w) z - |w|^2 / 2).
  static ExpPolySymbol normalized_kernel(Complex w);

  std::span<const ExpPolyTerm> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Zero, or a single frequency-zero term of degree zero; the value goes to `value`.
  bool is_constant(Complex* value = nullptr) const;

  Complex operator()(Complex z) const;
  /// log|f(z)| evaluated with the largest exponential factored out, so it
  /// stays finite where f(z) itself would overflow. -inf at zeros.
  double log_abs(Complex z) const;
  /// log|f(z)|^2, same scaling.
  double log_norm(Complex z) const;

  int max_degree() const;
  double max_freq_abs() const;
  /// sum over terms of sum_k |c_k|; |f(z)| <= l1 * (1+|z|)^d * exp(sigma |z|).
  double coeff_l1() const;

  ExpPolySymbol scaled(Complex c) const;
  friend ExpPolySymbol operator+(const ExpPolySymbol& f, const ExpPolySymbol& g);
  friend ExpPolySymbol operator-(const ExpPolySymbol& f, const ExpPolySymbol& g);
  friend ExpPolySymbol operator*(const ExpPolySymbol& f, const ExpPolySymbol& g);

  /// Exact structural equality of the normalized representation.
  bool operator==(const ExpPolySymbol&) const;

 private:
  std::vector<ExpPolyTerm> terms_;
};

struct OperatorSpec {
  ExpPolySymbol psi;
  AffineMap phi;
};

struct PairSpec {
  OperatorSpec first;
  OperatorSpec second;
};

Complex eval_symbol(const ExpPolySymbol& f, Complex z);

/// W_{psi,phi} f = psi * (f o phi), computed in closed form.
ExpPolySymbol apply_operator(const OperatorSpec& spec, const ExpPolySymbol& f);

ExpPolySymbol subtract(const ExpPolySymbol& f, const ExpPolySymbol& g);

/// (W_1 - W_2) k_w.
ExpPolySymbol diff_kernel_image(const PairSpec& pair, Complex w);

namespace detail {
bool frequencies_merge(Complex s, Complex t);
std::vector<Complex> poly_mul(std::span<const Complex> p, std::span<const Complex> q);
/// Q(a z + b) as a coefficient vector.
std::vector<Complex> poly_compose_affine(std::span<const Complex> q, Complex a, Complex b);
Complex poly_eval(std::span<const Complex> q, Complex z);
}  // namespace detail

}  // namespace fock
