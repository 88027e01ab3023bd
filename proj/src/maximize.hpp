#pragma once

// Global maximization of a log-functional g(z) over C, for functionals whose
// radial envelope  A + d log(1+r) + beta r + quad r^2  (quad < 0) is known.
// Used for sup_z |f(z)| e^{-|z|^2/2} and for sup_z m_z(psi, phi).

#include <cmath>
#include <functional>
#include <span>

#include "fock/symbols.hpp"

namespace fock::detail {

struct RadialEnvelope {
  double log_const = 0.0;
  double degree = 0.0;
  double beta = 0.0;
  double quad = -0.5;  // must be < 0

  double operator()(double r) const;
  /// Smallest radius beyond which the envelope stays below `level`.
  double radius_below(double level) const;
};

struct MaxResult {
  double log_value;
  Complex argmax;
  double search_radius;
};

MaxResult maximize_log(const std::function<double(Complex)>& log_value, const RadialEnvelope& envelope,
                       std::span<const Complex> seeds = {});

/// Compensated (Neumaier) sum in the given order.
class StableSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace fock::detail
