#include <doctest.h>

#include <cmath>

#include "fock/error.hpp"
#include "fock/sampling.hpp"
#include "fock/symbols.hpp"

using namespace fock;

namespace {

bool close(Complex x, Complex y, double tol = 1e-12) { return std::abs(x - y) <= tol * (1.0 + std::abs(y)); }

}  // namespace

TEST_CASE("normalization merges, cancels and sorts") {
  ExpPolySymbol f(std::vector<ExpPolyTerm>{
      {{1.0, 2.0}, {1.0, 0.0}}, {{3.0}, {0.0, 0.0}}, {{-1.0, 0.0, 0.0}, {1.0, 0.0}}});
  // e^z terms: (1 + 2z) + (-1) = 2z; constant term 3.
  REQUIRE(f.terms().size() == 2);
  CHECK(f.terms()[0].freq == Complex{});
  CHECK(f.terms()[0].coeffs.size() == 1);
  CHECK(f.terms()[1].coeffs.size() == 2);
  CHECK(f.terms()[1].coeffs[0] == Complex{});
  CHECK(f.max_degree() == 1);

  const auto g = ExpPolySymbol::exponential(2.0) - ExpPolySymbol::exponential(2.0);
  CHECK(g.is_zero());
}

TEST_CASE("non-finite input is rejected") {
  const ExpPolyTerm nan_coeff{{std::nan("")}, {}};
  const ExpPolyTerm inf_freq{{1.0}, {INFINITY, 0.0}};
  CHECK_THROWS_AS(ExpPolySymbol(std::vector{nan_coeff}), Error);
  CHECK_THROWS_AS(ExpPolySymbol(std::vector{inf_freq}), Error);
}

TEST_CASE("constants and kernels") {
  Complex c;
  CHECK(ExpPolySymbol::constant({2.0, -1.0}).is_constant(&c));
  CHECK(c == Complex{2.0, -1.0});
  CHECK_FALSE(ExpPolySymbol::monomial(1).is_constant());
  CHECK(ExpPolySymbol::zero().is_constant(&c));
  CHECK(c == Complex{});

  const Complex w{0.7, -1.1}, z{-0.3, 2.0};
  CHECK(close(ExpPolySymbol::kernel(w)(z), std::exp(std::conj(w) * z)));
  CHECK(close(ExpPolySymbol::normalized_kernel(w)(z), std::exp(std::conj(w) * z - 0.5 * std::norm(w))));
}

TEST_CASE("log_abs stays finite where the value overflows") {
  const auto f = ExpPolySymbol::exponential(1.0) + ExpPolySymbol::exponential(-1.0, 3.0);
  CHECK(std::abs(f.log_abs(2000.0) - 2000.0) < 1e-9);
  CHECK(std::abs(f.log_abs(-2000.0) - (2000.0 + std::log(3.0))) < 1e-9);
  CHECK(std::isinf(ExpPolySymbol::monomial(1).log_abs(0.0)));
}

TEST_CASE("apply_operator matches pointwise composition") {
  Sampler rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto psi = rng.symbol(2, 2, 1.0, 2.0);
    const auto f = rng.symbol(3, 3, 1.5, 2.0);
    const AffineMap phi{rng.in_disk(1.2), rng.in_disk(1.0)};
    const auto g = apply_operator({psi, phi}, f);
    for (int k = 0; k < 5; ++k) {
      const auto z = rng.in_disk(2.0);
      CHECK(close(g(z), psi(z) * f(phi(z)), 1e-10));
    }
  }
}

TEST_CASE("arithmetic agrees with pointwise evaluation") {
  Sampler rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto f = rng.symbol(), g = rng.symbol();
    const auto z = rng.in_disk(2.0);
    CHECK(close((f + g)(z), f(z) + g(z), 1e-10));
    CHECK(close((f - g)(z), f(z) - g(z), 1e-10));
    CHECK(close((f * g)(z), f(z) * g(z), 1e-10));
    CHECK(close(f.scaled({0.0, 2.0})(z), Complex{0.0, 2.0} * f(z), 1e-10));
    CHECK((f - f).is_zero());
  }
}

TEST_CASE("difference kernel image") {
  const PairSpec pair{{ExpPolySymbol::constant(1.0), AffineMap::identity()},
                      {ExpPolySymbol::constant(1.0), {-1.0, 0.0}}};
  const Complex w{1.0, 0.5}, z{0.2, -0.4};
  const auto k = ExpPolySymbol::normalized_kernel(w);
  CHECK(close(diff_kernel_image(pair, w)(z), k(z) - k(-z)));
}

TEST_CASE("polynomial helpers") {
  const std::vector<Complex> q{1.0, 2.0, 3.0};
  const auto composed = detail::poly_compose_affine(q, 2.0, 1.0);  // 1 + 2(2z+1) + 3(2z+1)^2
  for (Complex z : {Complex{0.0}, Complex{1.0, 1.0}, Complex{-2.0, 0.5}})
    CHECK(close(detail::poly_eval(composed, z), detail::poly_eval(q, 2.0 * z + 1.0)));
  const auto prod = detail::poly_mul(q, q);
  CHECK(prod.size() == 5);
  CHECK(close(prod[2], 10.0));
}
