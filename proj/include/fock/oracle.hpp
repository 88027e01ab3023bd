#pragma once

// Numerical evidence that is independent of the symbolic classifier:
// kernel probes, inequality checkers, the monomial divergence sequence,
// compactness decay along rays and truncated matrices on F^2.

#include <string>
#include <utility>
#include <vector>

#include "fock/classifier.hpp"
#include "fock/norms.hpp"

namespace fock {

struct CheckResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // lhs - rhs
  double tol = 0.0;
  bool pass = false;    // margin >= -tol

  static CheckResult make(double lhs, double rhs, double tol);
};

/// ||alpha1 K_{w1} + alpha2 K_{w2}||_inf.
double supnorm_two_kernels(Complex alpha1, Complex alpha2, Complex w1, Complex w2, const QuadConfig& cfg = {});

struct LemmaCheck {
  /// ||a1 K_w1 + a2 K_w2||_inf >= rho(w1, w2) (|a1| ||K_w1||_inf + |a2| ||K_w2||_inf)
  CheckResult sup_form;
  /// 2 max_{z in {w1, w2}} |a1 K_w1(z) + a2 K_w2(z)| e^{-|z|^2/2} >= S (1 - e^{-|w1-w2|^2/2})
  CheckResult two_point;
  bool pass() const { return sup_form.pass && two_point.pass; }
};

LemmaCheck lemma_est_check(Complex alpha1, Complex alpha2, Complex w1, Complex w2, const QuadConfig& cfg = {});

/// {r e^{i pi k / 8} : r in {0,...,4}, k = 0..15}, with r = 0 listed once.
std::vector<Complex> default_probe_points();

/// max_w ||(W_1 - W_2) k_w||_q; each value is a lower bound on ||W_1 - W_2||.
double probe_lower_bound(const PairSpec& pair, const Exponent& p, const Exponent& q,
                         const std::vector<Complex>& probes, const QuadConfig& cfg = {});

/// {r e^{i pi k / 8} : r in {6, 8}, k = 0..15}.
std::vector<Complex> default_essential_probe_points();

/// Kernel probe of ||W_1 - W_2||_e: singles classified compact are dropped
/// first (they do not change the essential norm), then the remaining
/// operator is probed with normalized kernels.
double probe_essential_lower_bound(const PairSpec& pair, const Exponent& p, const Exponent& q,
                                   const std::vector<Complex>& probes, const QuadConfig& cfg = {});

/// lhs = max(||L k_{phi1(z)}||_q, ||L k_{phi2(z)}||_q),
/// rhs = rho(phi1(z), phi2(z)) (m_z(psi1, phi1) + m_z(psi2, phi2)).
CheckResult eq1_check(const PairSpec& pair, const Exponent& q, Complex z, const QuadConfig& cfg = {});

/// r_n = |c1 a1^n + c2 a2^n| ||z^n||_q / ||z^n||_p for n = 0..N (b1 = b2 = 0, q < p).
std::vector<double> divergence_sequence(Complex c1, const AffineMap& phi1, Complex c2, const AffineMap& phi2,
                                        const Exponent& p, const Exponent& q, int max_n);

/// ||W k_{r u}||_q for each radius r along the unit direction u.
std::vector<double> compactness_decay_probe(const OperatorSpec& spec, const Exponent& q, Complex direction,
                                            const std::vector<double>& radii, const QuadConfig& cfg = {});

/// Compression of W to span{e_0..e_{N-1}}, e_n = z^n / sqrt(n!).
struct TruncatedMatrix {
  int dim = 0;
  std::vector<Complex> entries;  // row-major, (m, n) = <W e_n, e_m>
  int taylor_degree = 0;         // exponential factors expanded through this degree
  double taylor_remainder = 0.0; // contribution of the dropped Taylor tail to any entry

  Complex operator()(int m, int n) const { return entries[static_cast<std::size_t>(m) * dim + n]; }
};

TruncatedMatrix hilbert_matrix(const OperatorSpec& spec, int dim);

struct MatrixNormResult {
  double value = 0.0;
  int iterations = 0;
};

/// Largest singular value by plain power iteration on M^* M from the
/// normalized all-ones vector. Throws NoConvergence after 10^4 iterations;
/// clustered top singular values (|a| = 1) make this slow.
MatrixNormResult matrix_norm_power(const TruncatedMatrix& m, double tol);

/// Same start vector, but the iterates span a Krylov space (Lanczos on M^* M
/// with full reorthogonalization). Stops when the Ritz residual is below
/// tol * theta, and is exact once the space reaches dimension N.
MatrixNormResult matrix_norm_krylov(const TruncatedMatrix& m, double tol);
double matrix_norm_estimate(const TruncatedMatrix& m, double tol);

/// Numeric evidence for a single-operator verdict, independent of the symbolic
/// decision: polar grid scans of m_z, decay of m_z at large |z|, growth of the
/// circle maxima, or convergence of partial integrals of m_z^r for q < p.
struct VerdictEvidence {
  std::string oracle;
  std::vector<std::pair<std::string, double>> values;
  double tolerance = 0.0;
  bool consistent = false;
};

VerdictEvidence single_verdict_evidence(const OperatorSpec& spec, const Exponent& p, const Exponent& q,
                                        const Classification& verdict);

/// log of int_{|z| < R} m_z(psi, phi)^r dA.
double log_partial_integral_m(const OperatorSpec& spec, double r, double radius);

namespace detail {
Complex int_pow(Complex a, int n);
}

}  // namespace fock
