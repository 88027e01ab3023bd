#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fock/error.hpp"
#include "fock/exponent.hpp"
#include "fock/norms.hpp"
#include "fock/sampling.hpp"

using namespace fock;

TEST_CASE("monomial norms, quadrature against the gamma formula") {
  for (double p : {0.5, 1.0, 2.0, 3.7})
    for (int n : {0, 1, 5, 12, 20}) {
      const double exact = monomial_norm(n, p);
      const double quad = norm_p(ExpPolySymbol::monomial(n), p);
      CHECK(std::abs(quad / exact - 1.0) < 1e-6);
    }
}

TEST_CASE("closed forms") {
  CHECK(monomial_norm(0, 2.0) == doctest::Approx(1.0));
  CHECK(monomial_norm(1, 2.0) == doctest::Approx(1.0));
  CHECK(monomial_norm(2, 2.0) == doctest::Approx(std::sqrt(2.0)));
  // ||z^2||_4 = (1/2) * 24^{1/4}
  CHECK(monomial_norm(2, 4.0) == doctest::Approx(0.5 * std::pow(24.0, 0.25)).epsilon(1e-12));
  CHECK_THROWS_AS(log_gamma(0.0), Error);
}

TEST_CASE("Stirling form is within 1% at n = 200") {
  for (double p : {2.0, 4.0}) {
    const double ratio = std::exp(log_monomial_norm(200, p) - log_monomial_norm_asymptotic(200, p));
    CHECK(ratio > 0.99);
    CHECK(ratio < 1.01);
  }
}

TEST_CASE("kernel norms are e^{|w|^2/2}") {
  for (double p : {1.0, 2.0, 4.0})
    for (Complex w : {Complex{0.0}, Complex{1.0, 0.0}, Complex{-1.2, 1.7}, Complex{0.0, 2.5}}) {
      const double v = norm_p(ExpPolySymbol::kernel(w), p);
      CHECK(std::abs(v / std::exp(0.5 * std::norm(w)) - 1.0) < 1e-6);
    }
}

TEST_CASE("sup norm of kernels and monomials") {
  CHECK(norm_sup(ExpPolySymbol::normalized_kernel({1.5, -0.5})) == doctest::Approx(1.0).epsilon(1e-9));
  // sup r^n e^{-r^2/2} = (n/e)^{n/2}
  CHECK(norm_sup(ExpPolySymbol::monomial(4)) == doctest::Approx(std::pow(4.0 / std::numbers::e, 2.0)).epsilon(1e-9));
  CHECK(norm_sup(ExpPolySymbol::zero()) == 0.0);
}

TEST_CASE("pointwise bound holds with equality at normalized kernels") {
  const Complex w{0.8, -1.3};
  const auto k = ExpPolySymbol::normalized_kernel(w);
  for (double p : {0.5, 2.0, 3.0}) CHECK(std::abs(pointwise_bound_margin(k, p, w)) < 1e-9 * std::exp(0.5 * std::norm(w)));
  Sampler rng(3);
  for (int i = 0; i < 50; ++i) {
    const auto f = rng.symbol(3, 2, 1.5, 2.0);
    const auto z = rng.in_disk(3.0);
    const double p = rng.uniform(0.5, 4.0);
    CHECK(pointwise_bound_margin(f, p, z) >= -1e-9 * (1.0 + std::exp(0.5 * std::norm(z)) * norm_p(f, p)));
  }
}

TEST_CASE("explicit radius that cuts off mass is refused") {
  QuadConfig cfg;
  cfg.radial_max = 3.0;
  CHECK_THROWS_AS(norm_p(ExpPolySymbol::kernel({3.0, 0.0}), 2.0, cfg), Error);
  try {
    norm_p(ExpPolySymbol::kernel({3.0, 0.0}), 2.0, cfg);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TailNotNegligible);
  }
}

TEST_CASE("detailed estimate reports tail and resolution") {
  const auto est = norm_p_detailed(ExpPolySymbol::monomial(3, 2.0), 2.0);
  CHECK(est.value == doctest::Approx(2.0 * monomial_norm(3, 2.0)).epsilon(1e-9));
  CHECK(est.tail_rel < 1e-8);
  CHECK(est.resolution_rel < 1e-6);
  CHECK(est.used.radial_max.has_value());
}

TEST_CASE("quadrature config validation") {
  QuadConfig cfg;
  cfg.radial_nodes = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.rel_tol = -1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  CHECK_THROWS_AS(norm_p(ExpPolySymbol::constant(1.0), -2.0), Error);
}

TEST_CASE("exponents compare exactly when rational") {
  const auto a = Exponent::parse("1/3"), b = Exponent::parse("2/6");
  CHECK(a == b);
  CHECK(Exponent::parse("3/2") < Exponent::parse("5/3"));
  CHECK(Exponent::parse("2") == Exponent::rational(4, 2));
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("2") < Exponent::infinity());
  CHECK(Exponent::parse("2.5").value() == 2.5);
  CHECK_THROWS_AS(Exponent::parse("-1"), Error);
  CHECK_THROWS_AS(Exponent::parse("1/0"), Error);
  CHECK_THROWS_AS(Exponent::parse("abc"), Error);
  CHECK(Exponent::parse("3/2").to_string() == "3/2");
}
