#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace fock {

/// Fock-space exponent p in (0, inf]. Keeps the exact rational when one was
/// given ("3/2"), since the classification rules switch at p = q.
class Exponent {
 public:
  struct Rational {
    std::int64_t num;
    std::int64_t den;
  };

  Exponent() = default;
  /// Throws InvalidArgument unless value > 0 (NaN rejected).
  Exponent(double value);  // NOLINT(google-explicit-constructor)
  static Exponent rational(std::int64_t num, std::int64_t den);
  static Exponent infinity();
  /// Accepts "2", "2.5", "3/2", "inf".
  static Exponent parse(const std::string& text);

  double value() const { return value_; }
  bool is_infinite() const { return infinite_; }
  const std::optional<Rational>& exact() const { return exact_; }
  std::string to_string() const;

  friend bool operator<(const Exponent& x, const Exponent& y);
  friend bool operator==(const Exponent& x, const Exponent& y);
  friend bool operator<=(const Exponent& x, const Exponent& y) { return x < y || x == y; }

 private:
  double value_ = 2.0;
  bool infinite_ = false;
  std::optional<Rational> exact_;
};

}  // namespace fock
