#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "fock/error.hpp"
#include "fock/essnorm.hpp"
#include "fock/norms.hpp"
#include "fock/oracle.hpp"
#include "fock/sampling.hpp"

using namespace fock;

namespace {

const auto one = ExpPolySymbol::constant(1.0);

double svd_norm(const TruncatedMatrix& m) {
  Eigen::MatrixXcd a(m.dim, m.dim);
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) a(i, j) = m(i, j);
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues()(0);
}

}  // namespace

TEST_CASE("two-kernel inequality: fixed cases and random draws") {
  auto c = lemma_est_check(1.0, -1.0, 1.0, -1.0);
  CHECK(c.pass());
  c = lemma_est_check(1.0, 1.0, 0.5, 0.5);  // coincident points: rho = 0
  CHECK(c.sup_form.rhs == 0.0);
  CHECK(c.pass());
  CHECK(supnorm_two_kernels(1.0, 0.0, {1.0, 1.0}, 0.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-9));

  Sampler rng(42);
  for (int i = 0; i < 200; ++i) {
    const auto r = lemma_est_check(rng.in_disk(3.0), rng.in_disk(3.0), rng.in_disk(3.0), rng.in_disk(3.0));
    CHECK(r.sup_form.pass);
    CHECK(r.two_point.pass);
  }
}

TEST_CASE("two-point kernel estimate") {
  const PairSpec pair{{one, {1.0, 0.0}}, {one, {-1.0, 0.0}}};
  const auto c = eq1_check(pair, 2.0, 1.0);
  CHECK(c.rhs == doctest::Approx(2.0 / 3.0));
  CHECK(c.lhs == doctest::Approx(std::sqrt(2.0 - 2.0 * std::exp(-2.0))).epsilon(1e-8));
  CHECK(c.pass);
  const auto z0 = eq1_check(pair, 2.0, 0.0);  // phi1(0) = phi2(0)
  CHECK(z0.rhs == 0.0);
  CHECK(z0.pass);

  Sampler rng(8);
  for (int i = 0; i < 40; ++i) {
    const auto pr = rng.bounded_pair();
    const Exponent q = rng.uniform(0.5, 4.0);
    for (int k = 0; k < 5; ++k) CHECK(eq1_check(pr, q, rng.in_disk(3.0)).pass);
  }
}

TEST_CASE("probe on the rotation pair matches sqrt(2 - 2 e^{-2|w|^2})") {
  const PairSpec pair{{one, {1.0, 0.0}}, {one, {-1.0, 0.0}}};
  for (double r : {0.5, 1.0, 2.0}) {
    const double v = probe_lower_bound(pair, 2.0, 2.0, {Complex{r, 0.0}});
    CHECK(v == doctest::Approx(std::sqrt(2.0 - 2.0 * std::exp(-2.0 * r * r))).epsilon(1e-8));
  }
}

TEST_CASE("divergence sequence") {
  const auto s = divergence_sequence(1.0, {1.0, 0.0}, 1.0, {-1.0, 0.0}, 4.0, 2.0, 200);
  REQUIRE(s.size() == 201);
  CHECK(s[0] == doctest::Approx(2.0));
  for (int n = 1; n <= 200; n += 2) CHECK(s[n] == 0.0);
  CHECK(s[2] == doctest::Approx(2.0 * std::sqrt(2.0) / (0.5 * std::pow(24.0, 0.25))).epsilon(1e-12));
  for (int n = 4; n <= 200; n += 2) CHECK(s[n] > s[n - 2]);
  CHECK_THROWS_AS(divergence_sequence(1.0, {1.0, 1.0}, 1.0, {-1.0, 0.0}, 4.0, 2.0, 10), Error);
  CHECK_THROWS_AS(divergence_sequence(1.0, {1.0, 0.0}, 1.0, {-1.0, 0.0}, 2.0, 4.0, 10), Error);
  CHECK(detail::int_pow({0.0, 1.0}, 4) == Complex{1.0, 0.0});
}

TEST_CASE("decay along rays") {
  auto d = compactness_decay_probe({one, {0.5, 0.0}}, 2.0, 1.0, {3.0});
  CHECK(d[0] == doctest::Approx(std::exp(-27.0 / 8.0)).epsilon(1e-8));
  d = compactness_decay_probe({one, AffineMap::identity()}, 2.0, {0.0, 1.0}, {2.0, 4.0, 6.0});
  for (double v : d) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
  d = compactness_decay_probe({ExpPolySymbol::zero(), {0.5, 0.0}}, 2.0, 1.0, {2.0, 4.0});
  for (double v : d) CHECK(v == 0.0);
  CHECK_THROWS_AS(compactness_decay_probe({one, {0.5, 0.0}}, 2.0, 2.0, {1.0}), Error);
}

TEST_CASE("truncated matrices, closed forms") {
  auto m = hilbert_matrix({one, AffineMap::identity()}, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(m(i, j) == Complex(i == j ? 1.0 : 0.0));
  CHECK(matrix_norm_estimate(m, 1e-12) == doctest::Approx(1.0));

  m = hilbert_matrix({one, {0.5, 0.0}}, 3);
  CHECK(m(0, 0) == Complex(1.0));
  CHECK(m(1, 1) == Complex(0.5));
  CHECK(m(2, 2) == Complex(0.25));
  CHECK(std::abs(m(0, 1)) == 0.0);
  CHECK(matrix_norm_estimate(m, 1e-12) == doctest::Approx(1.0));

  for (double b : {0.5, 1.0, 1.5}) {
    m = hilbert_matrix({one, AffineMap::constant(b)}, 20);
    CHECK(m.taylor_remainder == 0.0);
    const double expected = std::exp(0.5 * b * b);
    const double tail = std::sqrt(std::max(0.0, std::exp(b * b) - [&] {
      double s = 0.0, t = 1.0;
      for (int n = 0; n < 20; ++n) {
        s += t;
        t *= b * b / (n + 1);
      }
      return s;
    }()));
    CHECK(std::abs(matrix_norm_estimate(m, 1e-14) - expected) <= 1e-6 + tail);
  }
  CHECK(matrix_norm_estimate(hilbert_matrix({one, AffineMap::constant(1.0)}, 20), 1e-14) ==
        doctest::Approx(std::exp(0.5)).epsilon(1e-6));
}

TEST_CASE("power iteration agrees with an SVD") {
  Sampler rng(77);
  for (int i = 0; i < 20; ++i) {
    const auto s = rng.bounded_spec();
    const auto m = hilbert_matrix(s, 24);
    const double power = matrix_norm_estimate(m, 1e-13);
    CHECK(power == doctest::Approx(svd_norm(m)).epsilon(1e-6));
  }
}

TEST_CASE("truncated norms increase with N and settle") {
  Sampler rng(91);
  for (int i = 0; i < 20; ++i) {
    const auto s = rng.bounded_spec();
    double prev = 0.0;
    for (int n : {8, 16, 32, 48, 64}) {
      const double v = matrix_norm_estimate(hilbert_matrix(s, n), 1e-13);
      CHECK(v >= prev * (1.0 - 1e-9));
      if (n == 64) CHECK(std::abs(v - prev) <= 1e-4 * v);
      prev = v;
    }
  }
}

TEST_CASE("kernel probe stays below the truncated matrix norm") {
  Sampler rng(93);
  for (int i = 0; i < 10; ++i) {
    const auto s = rng.bounded_spec();
    const PairSpec single{s, {ExpPolySymbol::zero(), AffineMap::identity()}};
    const double probe = probe_lower_bound(single, 2.0, 2.0, default_probe_points());
    const double mat = matrix_norm_estimate(hilbert_matrix(s, 64), 1e-13);
    CHECK(probe <= mat * (1.0 + 1e-3));
  }
}

TEST_CASE("power iteration failure modes") {
  const auto m = hilbert_matrix({one, {0.5, 0.0}}, 4);
  CHECK_THROWS_AS(matrix_norm_estimate(m, 0.0), Error);
  CHECK_THROWS_AS(hilbert_matrix({one, {0.5, 0.0}}, 0), Error);
}

TEST_CASE("verdict evidence agrees with the classifier") {
  const std::vector<OperatorSpec> specs{{one, AffineMap::identity()},
                                        {one, {0.5, 0.0}},
                                        {one, {1.0, 1.0}},
                                        {ExpPolySymbol::exponential(-1.0, 2.0), {1.0, 1.0}},
                                        {ExpPolySymbol::monomial(2), {0.7, 0.3}},
                                        {one, {1.2, 0.0}}};
  for (const auto& s : specs)
    for (auto [p, q] : {std::pair{2.0, 2.0}, std::pair{2.0, 4.0}, std::pair{4.0, 2.0}}) {
      const auto c = classify_single(s, p, q);
      const auto ev = single_verdict_evidence(s, p, q, c);
      CHECK_MESSAGE(ev.consistent, ev.oracle);
    }
}

TEST_CASE("partial integrals of m^r") {
  // m = e^{-3|z|^2/8} for a = 1/2: int m^r dA = 8 pi / (3 r) (1 - e^{-3 r R^2 / 8})
  const double r = 2.0, R = 3.0;
  const double exact = 8.0 * M_PI / (3.0 * r) * (1.0 - std::exp(-3.0 * r * R * R / 8.0));
  CHECK(std::exp(log_partial_integral_m({one, {0.5, 0.0}}, r, R)) == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("plain power iteration on well-separated spectra") {
  const auto m = hilbert_matrix({one, {0.5, 0.0}}, 8);
  const auto r = matrix_norm_power(m, 1e-12);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  // clustered top singular values: the Krylov variant agrees with an SVD
  const auto weyl = hilbert_matrix({ExpPolySymbol::exponential({-0.5, 0.0}), {1.0, {0.5, 0.0}}}, 24);
  CHECK(matrix_norm_krylov(weyl, 1e-13).value == doctest::Approx(svd_norm(weyl)).epsilon(1e-10));
}
