#include "maximize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fock/error.hpp"

namespace fock::detail {

double RadialEnvelope::operator()(double r) const {
  return log_const + degree * std::log1p(r) + beta * r + quad * r * r;
}

double RadialEnvelope::radius_below(double level) const {
  if (!(quad < 0.0)) throw Error(ErrorCode::Domain, "radial envelope must decay");
  // Derivative d/(1+r) + beta + 2 quad r is decreasing; locate its zero first.
  auto slope = [&](double r) { return degree / (1.0 + r) + beta + 2.0 * quad * r; };
  double lo = 0.0, hi = 1.0;
  if (slope(0.0) > 0.0) {
    while (slope(hi) > 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (slope(mid) > 0.0 ? lo : hi) = mid;
    }
  } else {
    hi = 0.0;
  }
  const double peak = hi;
  if ((*this)(peak) < level) return peak;
  lo = peak;
  hi = peak + 1.0;
  while ((*this)(hi) >= level) hi = peak + 2.0 * (hi - peak);
  for (int i = 0; i < 200 && hi - lo > 1e-10 * (1.0 + hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    ((*this)(mid) >= level ? lo : hi) = mid;
  }
  return hi;
}

namespace {

struct Candidate {
  double value;
  Complex z;
};

Candidate compass_ascent(const std::function<double(Complex)>& g, Candidate start, double step) {
  static constexpr std::array<Complex, 8> kDirs = {
      Complex{1, 0}, Complex{-1, 0}, Complex{0, 1}, Complex{0, -1},
      Complex{std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2},
      Complex{-std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2},
      Complex{std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2},
      Complex{-std::numbers::sqrt2 / 2, -std::numbers::sqrt2 / 2}};
  Candidate best = start;
  for (int iter = 0; iter < 20000 && step > 1e-10 * (1.0 + std::abs(best.z)); ++iter) {
    bool moved = false;
    for (const auto& d : kDirs) {
      const Complex z = best.z + step * d;
      const double v = g(z);
      if (v > best.value) {
        best = {v, z};
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  return best;
}

}  // namespace

MaxResult maximize_log(const std::function<double(Complex)>& g, const RadialEnvelope& envelope,
                       std::span<const Complex> seeds) {
  Candidate best{g(0.0), 0.0};
  for (const auto& s : seeds) {
    const double v = g(s);
    if (v > best.value) best = {v, s};
  }
  double level = best.value;
  if (!std::isfinite(level)) level = envelope(0.0) - 50.0;
  const double radius = std::max(envelope.radius_below(level - 0.5), 1.0);

  const int n_theta = radius > 40.0 ? 512 : (radius > 10.0 ? 256 : 128);
  const double h_r = std::min(0.2, radius / 64.0);
  const int n_r = std::min(5000, static_cast<int>(std::ceil(radius / h_r)));
  const double dr = radius / n_r;
  const double dtheta = 2.0 * std::numbers::pi / n_theta;

  std::vector<Candidate> grid;
  grid.reserve(static_cast<std::size_t>(n_r) * n_theta);
  for (int i = 1; i <= n_r; ++i) {
    const double r = i * dr;
    for (int j = 0; j < n_theta; ++j) {
      const Complex z = std::polar(r, j * dtheta);
      grid.push_back({g(z), z});
    }
  }
  constexpr std::size_t kTop = 6;
  const auto top = std::min(kTop, grid.size());
  std::partial_sort(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(top), grid.end(),
                    [](const Candidate& x, const Candidate& y) { return x.value > y.value; });

  std::vector<Candidate> starts(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(top));
  starts.push_back(best);
  for (const auto& s : seeds) starts.push_back({g(s), s});
  for (const auto& c : starts) {
    if (!std::isfinite(c.value)) continue;
    const double step = std::max(dr, std::abs(c.z) * dtheta);
    const auto refined = compass_ascent(g, c, step);
    if (refined.value > best.value) best = refined;
  }
  return {best.value, best.z, radius};
}

}  // namespace fock::detail
