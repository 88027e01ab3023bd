#include "fock/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fock/error.hpp"
#include "fock/essnorm.hpp"
#include "maximize.hpp"

namespace fock {

namespace detail {
Complex int_pow(Complex a, int n) {
  Complex result = 1.0;
  Complex base = a;
  for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
    if (e & 1U) result *= base;
    base *= base;
  }
  return result;
}
}  // namespace detail

CheckResult CheckResult::make(double lhs, double rhs, double tol) {
  CheckResult c{lhs, rhs, lhs - rhs, tol, false};
  c.pass = c.margin >= -tol;
  return c;
}

double supnorm_two_kernels(Complex alpha1, Complex alpha2, Complex w1, Complex w2, const QuadConfig& cfg) {
  const auto f = ExpPolySymbol::kernel(w1).scaled(alpha1) + ExpPolySymbol::kernel(w2).scaled(alpha2);
  return norm_sup(f, cfg);
}

LemmaCheck lemma_est_check(Complex alpha1, Complex alpha2, Complex w1, Complex w2, const QuadConfig& cfg) {
  const double s = std::abs(alpha1) * std::exp(0.5 * std::norm(w1)) + std::abs(alpha2) * std::exp(0.5 * std::norm(w2));
  const double rhs = rho(w1, w2) * s;
  LemmaCheck out;
  out.sup_form = CheckResult::make(supnorm_two_kernels(alpha1, alpha2, w1, w2, cfg), rhs, 1e-9 * (1.0 + rhs));

  const auto f = ExpPolySymbol::kernel(w1).scaled(alpha1) + ExpPolySymbol::kernel(w2).scaled(alpha2);
  auto at = [&](Complex z) { return std::abs(f(z)) * std::exp(-0.5 * std::norm(z)); };
  const double lhs2 = 2.0 * std::max(at(w1), at(w2));
  const double rhs2 = s * -std::expm1(-0.5 * std::norm(w1 - w2));
  out.two_point = CheckResult::make(lhs2, rhs2, 1e-9 * (1.0 + rhs2));
  return out;
}

std::vector<Complex> default_probe_points() {
  std::vector<Complex> pts{0.0};
  for (int r = 1; r <= 4; ++r)
    for (int k = 0; k < 16; ++k) pts.push_back(std::polar(static_cast<double>(r), std::numbers::pi * k / 8.0));
  return pts;
}

std::vector<Complex> default_essential_probe_points() {
  std::vector<Complex> pts;
  for (double r : {6.0, 8.0})
    for (int k = 0; k < 16; ++k) pts.push_back(std::polar(r, std::numbers::pi * k / 8.0));
  return pts;
}

double probe_lower_bound(const PairSpec& pair, const Exponent& p, const Exponent& q,
                         const std::vector<Complex>& probes, const QuadConfig& cfg) {
  (void)p;  // ||k_w||_p = 1 for every p
  if (q.is_infinite()) throw Error(ErrorCode::Domain, "kernel probes need finite q");
  double best = 0.0;
  for (const auto& w : probes) best = std::max(best, norm_p(diff_kernel_image(pair, w), q.value(), cfg));
  return best;
}

double probe_essential_lower_bound(const PairSpec& pair, const Exponent& p, const Exponent& q,
                                   const std::vector<Complex>& probes, const QuadConfig& cfg) {
  PairSpec reduced = pair;
  if (classify_single(pair.first, p, q).verdict == Verdict::Compact) reduced.first.psi = ExpPolySymbol::zero();
  if (classify_single(pair.second, p, q).verdict == Verdict::Compact) reduced.second.psi = ExpPolySymbol::zero();
  if (reduced.first.psi.is_zero() && reduced.second.psi.is_zero()) return 0.0;
  return probe_lower_bound(reduced, p, q, probes, cfg);
}

CheckResult eq1_check(const PairSpec& pair, const Exponent& q, Complex z, const QuadConfig& cfg) {
  if (q.is_infinite()) throw Error(ErrorCode::Domain, "eq1_check needs finite q");
  const Complex u1 = pair.first.phi(z);
  const Complex u2 = pair.second.phi(z);
  const double lhs = std::max(norm_p(diff_kernel_image(pair, u1), q.value(), cfg),
                              norm_p(diff_kernel_image(pair, u2), q.value(), cfg));
  const double m1 = pair.first.psi.is_zero() ? 0.0 : m_value(pair.first.psi, pair.first.phi, z);
  const double m2 = pair.second.psi.is_zero() ? 0.0 : m_value(pair.second.psi, pair.second.phi, z);
  const double rhs = rho(u1, u2) * (m1 + m2);
  return CheckResult::make(lhs, rhs, 1e-9 * (1.0 + rhs));
}

std::vector<double> divergence_sequence(Complex c1, const AffineMap& phi1, Complex c2, const AffineMap& phi2,
                                        const Exponent& p, const Exponent& q, int max_n) {
  if (phi1.b != Complex{} || phi2.b != Complex{})
    throw Error(ErrorCode::NonzeroOffsets, "divergence sequence needs phi_j(z) = a_j z");
  if (!(q < p) || p.is_infinite())
    throw Error(ErrorCode::UnsupportedExponents, "divergence sequence needs q < p < inf");
  if (max_n < 0) throw Error(ErrorCode::InvalidArgument, "N must be nonnegative");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(max_n) + 1);
  for (int n = 0; n <= max_n; ++n) {
    const double weight = std::abs(c1 * detail::int_pow(phi1.a, n) + c2 * detail::int_pow(phi2.a, n));
    const double ratio = std::exp(log_monomial_norm(n, q.value()) - log_monomial_norm(n, p.value()));
    out.push_back(weight * ratio);
  }
  return out;
}

std::vector<double> compactness_decay_probe(const OperatorSpec& spec, const Exponent& q, Complex direction,
                                            const std::vector<double>& radii, const QuadConfig& cfg) {
  if (q.is_infinite()) throw Error(ErrorCode::Domain, "decay probe needs finite q");
  if (std::abs(std::abs(direction) - 1.0) > 1e-12)
    throw Error(ErrorCode::InvalidArgument, "direction must be a unit complex number");
  std::vector<double> out;
  for (double r : radii) {
    const auto image = apply_operator(spec, ExpPolySymbol::normalized_kernel(r * direction));
    out.push_back(norm_p(image, q.value(), cfg));
  }
  return out;
}

TruncatedMatrix hilbert_matrix(const OperatorSpec& spec, int dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "matrix dimension must be >= 1");
  const auto n_coef = static_cast<std::size_t>(dim);
  // Taylor coefficients of psi through degree dim-1. Entries only involve
  // coefficients of degree < dim, so this truncation is exact.
  std::vector<Complex> psi(n_coef);
  for (const auto& t : spec.psi.terms()) {
    std::vector<Complex> ex(n_coef);
    Complex c = 1.0;
    for (std::size_t k = 0; k < n_coef; ++k) {
      ex[k] = c;
      c *= t.freq / static_cast<double>(k + 1);
    }
    for (std::size_t i = 0; i < t.coeffs.size() && i < n_coef; ++i)
      for (std::size_t k = 0; i + k < n_coef; ++k) psi[i + k] += t.coeffs[i] * ex[k];
  }

  TruncatedMatrix m;
  m.dim = dim;
  m.taylor_degree = dim - 1;
  m.taylor_remainder = 0.0;
  m.entries.assign(n_coef * n_coef, 0.0);
  std::vector<Complex> power(n_coef);  // coefficients of phi(z)^n
  power[0] = 1.0;
  for (int n = 0; n < dim; ++n) {
    for (int row = 0; row < dim; ++row) {
      std::complex<long double> acc = 0.0L;
      for (int k = 0; k <= row; ++k)
        acc += std::complex<long double>(psi[row - k]) * std::complex<long double>(power[k]);
      const double scale = std::exp(0.5 * (std::lgamma(row + 1.0) - std::lgamma(n + 1.0)));
      m.entries[static_cast<std::size_t>(row) * n_coef + n] = Complex(acc) * scale;
    }
    for (std::size_t k = n_coef; k-- > 0;)
      power[k] = spec.phi.b * power[k] + (k > 0 ? spec.phi.a * power[k - 1] : Complex{});
  }
  return m;
}

MatrixNormResult matrix_norm_power(const TruncatedMatrix& m, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const int n = m.dim;
  std::vector<Complex> v(n, 1.0 / std::sqrt(static_cast<double>(n))), u(n), w(n);
  double sigma = 0.0, prev_delta = 0.0;
  for (int iter = 1; iter <= 10000; ++iter) {
    for (int i = 0; i < n; ++i) {
      Complex acc = 0.0;
      for (int j = 0; j < n; ++j) acc += m(i, j) * v[j];
      u[i] = acc;
    }
    double u_norm2 = 0.0;
    for (const auto& x : u) u_norm2 += std::norm(x);
    const double next = std::sqrt(u_norm2);
    if (next == 0.0) return {0.0, iter};
    for (int j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (int i = 0; i < n; ++i) acc += std::conj(m(i, j)) * u[i];
      w[j] = acc;
    }
    double w_norm2 = 0.0;
    for (const auto& x : w) w_norm2 += std::norm(x);
    const double w_norm = std::sqrt(w_norm2);
    for (int j = 0; j < n; ++j) v[j] = w[j] / w_norm;

    const double delta = std::abs(next - sigma);
    sigma = next;
    // Below this the deltas are rounding noise and their ratios mean nothing.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::sqrt(static_cast<double>(n)) * sigma;
    if (iter > 1 && delta <= floor) return {sigma, iter};
    if (iter > 1) {
      // Geometric tail estimate of the remaining change.
      const double ratio = prev_delta > 0.0 ? std::min(delta / prev_delta, 0.999999) : 0.0;
      const double remaining = delta * ratio / (1.0 - ratio);
      if (delta <= tol * sigma && remaining <= tol * sigma) return {sigma, iter};
    }
    prev_delta = delta;
  }
  throw Error(ErrorCode::NoConvergence, "power iteration did not converge in 10^4 iterations");
}

namespace {

// Largest eigenvalue of the symmetric tridiagonal matrix (alpha, beta) by
// Sturm-sequence bisection.
double tridiag_top_eigenvalue(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const std::size_t k = alpha.size();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = (i > 0 ? std::abs(beta[i - 1]) : 0.0) + (i + 1 < k ? std::abs(beta[i]) : 0.0);
    lo = std::min(lo, alpha[i] - r);
    hi = std::max(hi, alpha[i] + r);
  }
  // number of eigenvalues < x
  const auto count_below = [&](double x) {
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      d = alpha[i] - x - (i > 0 ? beta[i - 1] * beta[i - 1] / d : 0.0);
      if (d == 0.0) d = -1e-300;
      if (d < 0.0) ++count;
    }
    return count;
  };
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(mid) == static_cast<int>(k))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// Unit eigenvector of the tridiagonal matrix for eigenvalue theta, by two
// steps of inverse iteration (Thomas algorithm).
std::vector<double> tridiag_eigenvector(const std::vector<double>& alpha, const std::vector<double>& beta,
                                        double theta) {
  const std::size_t k = alpha.size();
  const double shift = theta + 1e-13 * (1.0 + std::abs(theta));
  std::vector<double> x(k, 1.0), c(k), d(k);
  for (int pass = 0; pass < 3; ++pass) {
    // solve (T - shift) y = x
    double denom = alpha[0] - shift;
    c[0] = k > 1 ? beta[0] / denom : 0.0;
    d[0] = x[0] / denom;
    for (std::size_t i = 1; i < k; ++i) {
      denom = alpha[i] - shift - beta[i - 1] * c[i - 1];
      if (denom == 0.0) denom = 1e-300;
      c[i] = i + 1 < k ? beta[i] / denom : 0.0;
      d[i] = (x[i] - beta[i - 1] * d[i - 1]) / denom;
    }
    x[k - 1] = d[k - 1];
    for (std::size_t i = k - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
  }
  return x;
}

}  // namespace

MatrixNormResult matrix_norm_krylov(const TruncatedMatrix& m, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const int n = m.dim;
  const auto apply_gram = [&](const std::vector<Complex>& v) {
    std::vector<Complex> u(n), w(n);
    for (int i = 0; i < n; ++i) {
      Complex acc = 0.0;
      for (int j = 0; j < n; ++j) acc += m(i, j) * v[j];
      u[i] = acc;
    }
    for (int j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (int i = 0; i < n; ++i) acc += std::conj(m(i, j)) * u[i];
      w[j] = acc;
    }
    return w;
  };
  const auto dot = [&](const std::vector<Complex>& x, const std::vector<Complex>& y) {
    Complex acc = 0.0;
    for (int i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
    return acc;
  };

  std::vector<std::vector<Complex>> q{std::vector<Complex>(n, 1.0 / std::sqrt(static_cast<double>(n)))};
  std::vector<double> alpha, beta;
  double theta = 0.0;
  for (int k = 1; k <= n; ++k) {
    auto w = apply_gram(q.back());
    alpha.push_back(dot(q.back(), w).real());
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qj : q) {
        const Complex c = dot(qj, w);
        for (int i = 0; i < n; ++i) w[i] -= c * qj[i];
      }
    double b = 0.0;
    for (const auto& x : w) b += std::norm(x);
    b = std::sqrt(b);

    theta = tridiag_top_eigenvalue(alpha, beta);
    if (theta <= 0.0 && b == 0.0) return {0.0, k};
    const auto s = tridiag_eigenvector(alpha, beta, theta);
    const double residual = b * std::abs(s.back());
    if (k == n || b <= 64.0 * std::numeric_limits<double>::epsilon() * theta || residual <= tol * theta)
      return {std::sqrt(std::max(theta, 0.0)), k};
    beta.push_back(b);
    for (auto& x : w) x /= b;
    q.push_back(std::move(w));
  }
  return {std::sqrt(std::max(theta, 0.0)), n};
}

double matrix_norm_estimate(const TruncatedMatrix& m, double tol) { return matrix_norm_krylov(m, tol).value; }

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

detail::RadialEnvelope m_envelope(const OperatorSpec& spec) {
  const auto profile = growth_profile(spec.psi, spec.phi);
  double beta = 0.0;
  for (const auto& t : profile.terms) beta = std::max(beta, std::abs(t.lambda));
  return {profile.log_const, static_cast<double>(spec.psi.max_degree()), beta, profile.quad_coeff};
}

double log_m(const OperatorSpec& spec, Complex z) { return log_m_value(spec.psi, spec.phi, z); }

// max of m_z over a polar grid of n x n points on the disk of the given radius
double grid_max_m(const OperatorSpec& spec, double radius, int n) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < n; ++j) best = std::max(best, log_m(spec, std::polar(radius * i / n, kTwoPi * j / n)));
  return std::exp(best);
}

double log_circle_max_m(const OperatorSpec& spec, double radius) {
  double best = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < 256; ++j) best = std::max(best, log_m(spec, std::polar(radius, kTwoPi * j / 256)));
  return best;
}

std::vector<Complex> evidence_directions() {
  // fixed pseudo-random angles so reports stay reproducible
  std::vector<Complex> dirs;
  for (int k = 0; k < 20; ++k) dirs.push_back(std::polar(1.0, 0.3 + k * 2.399963229728653));
  return dirs;
}

}  // namespace

double log_partial_integral_m(const OperatorSpec& spec, double r, double radius) {
  constexpr int kNr = 192;
  constexpr int kNt = 192;
  // composite Simpson in r, trapezoid in theta
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(kNr + 1) * kNt);
  double peak = -std::numeric_limits<double>::infinity();
  const double h = radius / kNr;
  for (int i = 1; i <= kNr; ++i) {
    const double rr = i * h;
    const double simpson = (i == kNr) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    const double log_w = std::log(simpson * h / 3.0 * rr * kTwoPi / kNt);
    for (int j = 0; j < kNt; ++j) {
      const double v = log_w + r * log_m(spec, std::polar(rr, kTwoPi * j / kNt));
      logs.push_back(v);
      peak = std::max(peak, v);
    }
  }
  detail::StableSum sum;
  for (double v : logs) sum.add(std::exp(v - peak));
  return std::log(sum.value()) + peak;
}

VerdictEvidence single_verdict_evidence(const OperatorSpec& spec, const Exponent& p, const Exponent& q,
                                        const Classification& verdict) {
  VerdictEvidence ev;
  if (spec.psi.is_zero()) {
    ev.oracle = "zero weight: W k_w = 0 for all w";
    ev.consistent = verdict.verdict == Verdict::Compact;
    return ev;
  }
  const bool expanding = !detail::is_unit_modulus(spec.phi.a) && std::norm(spec.phi.a) > 1.0;
  const bool integrability = q < p && !expanding && spec.phi.a != Complex{};

  switch (verdict.verdict) {
    case Verdict::Unbounded: {
      if (integrability) {
        const double r = p.value() * q.value() / (p.value() - q.value());
        ev.oracle = "partial integrals of m_z^r over |z| < R";
        const double i4 = log_partial_integral_m(spec, r, 4.0);
        const double i8 = log_partial_integral_m(spec, r, 8.0);
        ev.values = {{"r", r}, {"log_integral_R4", i4}, {"log_integral_R8", i8}};
        ev.tolerance = std::log(3.0);
        ev.consistent = i8 - i4 >= ev.tolerance;
      } else {
        ev.oracle = "circle maxima of log m_z at R = 4, 8, 16, 32";
        double prev = -std::numeric_limits<double>::infinity();
        ev.consistent = true;
        for (double radius : {4.0, 8.0, 16.0, 32.0}) {
          const double v = log_circle_max_m(spec, radius);
          ev.values.push_back({"log_max_R" + std::to_string(static_cast<int>(radius)), v});
          ev.consistent = ev.consistent && v > prev;
          prev = v;
        }
      }
      return ev;
    }
    case Verdict::BoundedNotCompact: {
      ev.oracle = "64x64 polar grid of m_z on |z| <= 12; m_z at |z| = 12 in 20 directions";
      ev.tolerance = 1e-6;
      const double sup = verdict.sup ? verdict.sup->value() : sup_m(spec.psi, spec.phi).value();
      const double lim = verdict.limsup ? verdict.limsup->value() : limsup_m(spec.psi, spec.phi).value();
      const double grid = grid_max_m(spec, 12.0, 64);
      double worst = 0.0;
      for (const auto& d : evidence_directions())
        worst = std::max(worst, std::abs(std::exp(log_m(spec, 12.0 * d)) - lim) / lim);
      ev.values = {{"sup_m", sup}, {"grid_max", grid}, {"limsup_m", lim}, {"max_rel_dev_at_R12", worst}};
      ev.consistent = grid <= sup * (1.0 + ev.tolerance) && worst <= ev.tolerance;
      return ev;
    }
    case Verdict::Compact: {
      const auto env = m_envelope(spec);
      if (integrability) {
        const double r = p.value() * q.value() / (p.value() - q.value());
        // r * envelope below log(1e-12) beyond radius
        detail::RadialEnvelope scaled{r * env.log_const, r * env.degree, r * env.beta, r * env.quad};
        const double radius = std::max(4.0, scaled.radius_below(std::log(1e-12)));
        ev.oracle = "partial integrals of m_z^r converge";
        const double i1 = log_partial_integral_m(spec, r, radius);
        const double i2 = log_partial_integral_m(spec, r, 2.0 * radius);
        ev.tolerance = 1e-6;
        ev.values = {{"r", r}, {"R", radius}, {"log_integral_R", i1}, {"log_integral_2R", i2}};
        ev.consistent = std::abs(std::expm1(i2 - i1)) <= ev.tolerance;
        return ev;
      }
      ev.oracle = "64x64 polar grid of m_z on |z| <= 12; decay of m_z in 20 directions";
      ev.tolerance = 1e-6;
      const double sup = verdict.sup ? verdict.sup->value() : sup_m(spec.psi, spec.phi).value();
      const double grid = grid_max_m(spec, 12.0, 64);
      const double radius = std::max(12.0, env.radius_below(std::log(1e-6)));
      double far = 0.0;
      for (const auto& d : evidence_directions()) far = std::max(far, std::exp(log_m(spec, radius * d)));
      ev.values = {{"sup_m", sup}, {"grid_max", grid}, {"decay_radius", radius}, {"max_m_at_decay_radius", far}};
      ev.consistent = grid <= sup * (1.0 + ev.tolerance) && far <= ev.tolerance;
      return ev;
    }
    case Verdict::IndeterminateSymbolic:
      ev.oracle = "none";
      ev.consistent = true;
      return ev;
  }
  return ev;
}

}  // namespace fock
