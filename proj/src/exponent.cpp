#include "fock/exponent.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "fock/error.hpp"

namespace fock {

Exponent::Exponent(double value) : value_(value) {
  if (!(value > 0.0)) throw Error(ErrorCode::InvalidArgument, "exponent must be positive");
  if (std::isinf(value)) infinite_ = true;
}

Exponent Exponent::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "exponent denominator must be nonzero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num <= 0) throw Error(ErrorCode::InvalidArgument, "exponent must be positive");
  const auto g = std::gcd(num, den);
  Exponent e(static_cast<double>(num) / static_cast<double>(den));
  e.exact_ = Rational{num / g, den / g};
  return e;
}

Exponent Exponent::infinity() { return Exponent(std::numeric_limits<double>::infinity()); }

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity") return infinity();
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t used_n = 0, used_d = 0;
      const auto n = std::stoll(text.substr(0, slash), &used_n);
      const auto d = std::stoll(text.substr(slash + 1), &used_d);
      if (used_n != slash || used_d != text.size() - slash - 1) throw std::invalid_argument(text);
      return rational(n, d);
    }
    std::size_t used = 0;
    if (text.find_first_of(".eE") == std::string::npos) {
      const auto n = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return rational(n, 1);
    }
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return Exponent(v);
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::Parse, "cannot parse exponent '" + text + "'");
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::Parse, "exponent out of range '" + text + "'");
  }
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  if (exact_) {
    if (exact_->den == 1) return std::to_string(exact_->num);
    return std::to_string(exact_->num) + "/" + std::to_string(exact_->den);
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value_);
  return buf;
}

bool operator<(const Exponent& x, const Exponent& y) {
  if (x.infinite_ || y.infinite_) return !x.infinite_ && y.infinite_;
  if (x.exact_ && y.exact_)
    return static_cast<__int128>(x.exact_->num) * y.exact_->den <
           static_cast<__int128>(y.exact_->num) * x.exact_->den;
  return x.value_ < y.value_;
}

bool operator==(const Exponent& x, const Exponent& y) {
  if (x.infinite_ || y.infinite_) return x.infinite_ == y.infinite_;
  if (x.exact_ && y.exact_)
    return x.exact_->num == y.exact_->num && x.exact_->den == y.exact_->den;
  return x.value_ == y.value_;
}

}  // namespace fock
