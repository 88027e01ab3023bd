#include "fock/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "fock/error.hpp"
#include "maximize.hpp"

namespace fock {

namespace {

constexpr double kPi = std::numbers::pi;

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

GaussLegendre build_gauss_legendre(int n) {
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

std::shared_ptr<const GaussLegendre> gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const GaussLegendre>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const GaussLegendre>(build_gauss_legendre(n));
  return slot;
}

// Upper bound on log( p int_R^inf r |f|^p e^{-p r^2/2} dr ) from
// |f(z)| <= l1 (1+r)^d e^{sigma r} and log(1+r) <= log(1+R) + (r-R)/(1+R).
double log_tail_bound(const ExpPolySymbol& f, double p, double radius) {
  const double l1 = f.coeff_l1();
  const double d = f.max_degree();
  const double sigma = f.max_freq_abs();
  const double beta = p * sigma + p * d / (1.0 + radius);
  const double mu = beta / p;
  const double x = radius - mu;
  // int_R^inf r e^{-p r^2/2 + beta r} dr = e^{beta^2/(2p)} int_{x}^inf (u + mu) e^{-p u^2/2} du
  const double gauss_part = std::exp(-0.5 * p * x * x) / p;
  const double erfc_part = mu * std::sqrt(kPi / (2.0 * p)) * std::erfc(x * std::sqrt(0.5 * p));
  return std::log(p) + p * std::log(l1) + p * d * std::log1p(radius) - p * d * radius / (1.0 + radius) +
         beta * beta / (2.0 * p) + std::log(gauss_part + erfc_part);
}

struct RawIntegral {
  double log_value;   // log of p * int_0^R int r |f|^p e^{-p r^2/2} dr dtheta / 2pi
  double log_coarse;  // same with half the angular and radial nodes
};

RawIntegral integrate(const ExpPolySymbol& f, double p, double radius, int n_r, int n_theta, bool coarse) {
  auto one_pass = [&](int nr, int nt) {
    const auto rule = gauss_legendre(nr);
    std::vector<Complex> unit(nt);
    for (int j = 0; j < nt; ++j) unit[j] = std::polar(1.0, 2.0 * kPi * j / nt);
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(nr) * nt);
    double peak = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < nr; ++i) {
      const double r = 0.5 * radius * (rule->nodes[i] + 1.0);
      const double log_w = std::log(0.5 * radius * rule->weights[i] * r / nt) - 0.5 * p * r * r;
      for (int j = 0; j < nt; ++j) {
        const double v = log_w + 0.5 * p * f.log_norm(r * unit[j]);
        logs.push_back(v);
        peak = std::max(peak, v);
      }
    }
    if (!std::isfinite(peak)) return -std::numeric_limits<double>::infinity();
    detail::StableSum sum;
    for (double v : logs) sum.add(std::exp(v - peak));
    return std::log(p * sum.value()) + peak;
  };
  RawIntegral out{one_pass(n_r, n_theta), 0.0};
  out.log_coarse = coarse ? one_pass(std::max(16, n_r / 2), std::max(16, n_theta / 2)) : out.log_value;
  return out;
}

int round_up(double x, int multiple) {
  return static_cast<int>(std::ceil(x / multiple)) * multiple;
}

}  // namespace

void QuadConfig::validate() const {
  if (radial_max && !(*radial_max > 0.0))
    throw Error(ErrorCode::InvalidArgument, "radial_max must be positive");
  if (radial_nodes < 16) throw Error(ErrorCode::InvalidArgument, "radial_nodes must be >= 16");
  if (angular_nodes < 16) throw Error(ErrorCode::InvalidArgument, "angular_nodes must be >= 16");
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw Error(ErrorCode::InvalidArgument, "rel_tol must lie in (0, 1e-2]");
}

QuadConfig default_quad(const ExpPolySymbol& f, double p) {
  const double sigma = f.max_freq_abs();
  const double d = f.max_degree();
  const double spread = std::sqrt(2.0 * d / p);
  QuadConfig cfg;
  const double radius = std::max({8.0, sigma + 2.0 * sigma / p + 2.0 * spread + 6.0,
                                  sigma + spread + std::sqrt(80.0 / p)});
  cfg.radial_max = radius;
  cfg.radial_nodes = std::max(256, round_up(12.0 * radius, 8));
  const double kappa = p * sigma * (sigma + spread + 4.0 / std::sqrt(p));
  cfg.angular_nodes = std::max(128, round_up(1.5 * kappa + 32.0, 8));
  return cfg;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::Domain, "log_gamma requires x > 0");
  return std::lgamma(x);
}

double log_monomial_norm(int n, double p) {
  if (n < 0) throw Error(ErrorCode::Domain, "monomial degree must be nonnegative");
  if (!(p > 0.0) || std::isinf(p)) throw Error(ErrorCode::Domain, "monomial_norm requires finite p > 0");
  return 0.5 * n * std::log(2.0 / p) + log_gamma(0.5 * n * p + 1.0) / p;
}

double monomial_norm(int n, double p) { return std::exp(log_monomial_norm(n, p)); }

double log_monomial_norm_asymptotic(int n, double p) {
  if (n < 1) throw Error(ErrorCode::Domain, "asymptotic form requires n >= 1");
  if (!(p > 0.0) || std::isinf(p)) throw Error(ErrorCode::Domain, "asymptotic form requires finite p > 0");
  return 0.5 * n * (std::log(static_cast<double>(n)) - 1.0) + std::log(kPi * p * n) / (2.0 * p);
}

double monomial_norm_asymptotic(int n, double p) { return std::exp(log_monomial_norm_asymptotic(n, p)); }

namespace {

NormEstimate estimate(const ExpPolySymbol& f, double p, const QuadConfig& cfg_in, bool with_resolution) {
  if (!(p > 0.0) || std::isinf(p)) throw Error(ErrorCode::Domain, "norm_p requires finite p > 0");
  cfg_in.validate();
  NormEstimate est;
  if (f.is_zero()) {
    est.used = cfg_in;
    return est;
  }
  const bool automatic = !cfg_in.radial_max.has_value();
  QuadConfig cfg = cfg_in;
  if (automatic) {
    const auto base = default_quad(f, p);
    cfg.radial_max = base.radial_max;
    cfg.radial_nodes = std::max(cfg.radial_nodes, base.radial_nodes);
    cfg.angular_nodes = std::max(cfg.angular_nodes, base.angular_nodes);
  }
  // Relative error on the norm is ((I + T) / I)^{1/p} - 1.
  const double log_allowed = std::log(std::expm1(p * std::log1p(cfg.rel_tol)));
  for (int attempt = 0;; ++attempt) {
    const double radius = *cfg.radial_max;
    const auto raw = integrate(f, p, radius, cfg.radial_nodes, cfg.angular_nodes, with_resolution);
    const double log_tail = log_tail_bound(f, p, radius);
    if (log_tail - raw.log_value <= log_allowed) {
      est.value = std::exp(raw.log_value / p);
      est.tail_rel = std::expm1(std::log1p(std::exp(log_tail - raw.log_value)) / p);
      est.resolution_rel = std::abs(std::expm1((raw.log_coarse - raw.log_value) / p));
      est.used = cfg;
      return est;
    }
    if (!automatic || attempt >= 6) {
      throw Error(ErrorCode::TailNotNegligible,
                  "analytic tail bound beyond radial_max=" + std::to_string(radius) +
                      " exceeds rel_tol; raise radial_max");
    }
    cfg.radial_max = radius * 1.5;
    cfg.radial_nodes = std::max(cfg.radial_nodes, round_up(12.0 * *cfg.radial_max, 8));
  }
}

}  // namespace

NormEstimate norm_p_detailed(const ExpPolySymbol& f, double p, const QuadConfig& cfg) {
  return estimate(f, p, cfg, true);
}

double norm_p(const ExpPolySymbol& f, double p, const QuadConfig& cfg) {
  return estimate(f, p, cfg, false).value;
}

double norm_sup(const ExpPolySymbol& f, const QuadConfig& cfg) {
  cfg.validate();
  if (f.is_zero()) return 0.0;
  // m_z(f, 0) = |f(z)| e^{-|z|^2/2}: Gaussian decay dominates every exp-poly,
  // so the growth test always reports a finite value for this family.
  detail::RadialEnvelope env{std::log(f.coeff_l1()), static_cast<double>(f.max_degree()), f.max_freq_abs(), -0.5};
  std::vector<Complex> seeds;
  for (const auto& t : f.terms()) seeds.push_back(std::conj(t.freq));
  const auto best = detail::maximize_log([&](Complex z) { return f.log_abs(z) - 0.5 * std::norm(z); }, env, seeds);
  return std::exp(best.log_value);
}

double pointwise_bound_margin(const ExpPolySymbol& f, double p, Complex z, const QuadConfig& cfg) {
  const double norm = norm_p(f, p, cfg);
  return std::exp(0.5 * std::norm(z)) * norm - std::abs(f(z));
}

}  // namespace fock
