#include "fock/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fock/error.hpp"

namespace fock {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::TailNotNegligible: return "TailNotNegligible";
    case ErrorCode::ZeroWeight: return "ZeroWeight";
    case ErrorCode::UnsupportedExponents: return "UnsupportedExponents";
    case ErrorCode::ReducesToSingle: return "ReducesToSingle";
    case ErrorCode::IdenticalMaps: return "IdenticalMaps";
    case ErrorCode::NonzeroOffsets: return "NonzeroOffsets";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotBounded: return "NotBounded";
    case ErrorCode::Domain: return "DomainError";
  }
  return "UnknownError";
}

namespace detail {

bool frequencies_merge(Complex s, Complex t) {
  return std::abs(s - t) <= 1e-12 * (1.0 + std::abs(s));
}

std::vector<Complex> poly_mul(std::span<const Complex> p, std::span<const Complex> q) {
  if (p.empty() || q.empty()) return {};
  std::vector<Complex> out(p.size() + q.size() - 1);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  return out;
}

std::vector<Complex> poly_compose_affine(std::span<const Complex> q, Complex a, Complex b) {
  // Horner in polynomial arithmetic: ((c_d (az+b) + c_{d-1}) (az+b) + ...).
  std::vector<Complex> out;
  const Complex lin[2] = {b, a};
  for (auto it = q.rbegin(); it != q.rend(); ++it) {
    out = poly_mul(out, lin);
    if (out.empty()) out.push_back(0.0);
    out[0] += *it;
  }
  return out;
}

Complex poly_eval(std::span<const Complex> q, Complex z) {
  Complex acc = 0.0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace detail

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

struct Accum {
  Complex freq;
  std::vector<Complex> sum;
  std::vector<double> mag;  // sum of |addends| per coefficient, for cancellation detection
};

std::vector<ExpPolyTerm> normalize(std::vector<ExpPolyTerm> terms) {
  std::vector<Accum> groups;
  for (auto& t : terms) {
    if (!finite(t.freq))
      throw Error(ErrorCode::InvalidArgument, "symbol frequency must be finite");
    for (const auto& c : t.coeffs)
      if (!finite(c)) throw Error(ErrorCode::InvalidArgument, "symbol coefficient must be finite");
    auto g = std::find_if(groups.begin(), groups.end(),
                          [&](const Accum& a) { return detail::frequencies_merge(a.freq, t.freq); });
    if (g == groups.end()) {
      groups.push_back({t.freq, {}, {}});
      g = std::prev(groups.end());
    }
    if (g->sum.size() < t.coeffs.size()) {
      g->sum.resize(t.coeffs.size());
      g->mag.resize(t.coeffs.size());
    }
    for (std::size_t k = 0; k < t.coeffs.size(); ++k) {
      g->sum[k] += t.coeffs[k];
      g->mag[k] += std::abs(t.coeffs[k]);
    }
  }

  std::vector<ExpPolyTerm> out;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  for (auto& g : groups) {
    for (std::size_t k = 0; k < g.sum.size(); ++k)
      if (std::abs(g.sum[k]) <= 8.0 * kEps * g.mag[k]) g.sum[k] = 0.0;
    while (!g.sum.empty() && g.sum.back() == Complex{}) g.sum.pop_back();
    if (!g.sum.empty()) out.push_back({std::move(g.sum), g.freq});
  }
  std::sort(out.begin(), out.end(), [](const ExpPolyTerm& x, const ExpPolyTerm& y) {
    if (x.freq.real() != y.freq.real()) return x.freq.real() < y.freq.real();
    return x.freq.imag() < y.freq.imag();
  });
  return out;
}

}  // namespace

ExpPolySymbol::ExpPolySymbol(std::vector<ExpPolyTerm> terms) : terms_(normalize(std::move(terms))) {}

ExpPolySymbol ExpPolySymbol::constant(Complex c) { return ExpPolySymbol({{{c}, 0.0}}); }

ExpPolySymbol ExpPolySymbol::monomial(int n, Complex c) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "monomial degree must be nonnegative");
  std::vector<Complex> coeffs(static_cast<std::size_t>(n) + 1);
  coeffs.back() = c;
  return ExpPolySymbol({{std::move(coeffs), 0.0}});
}

ExpPolySymbol ExpPolySymbol::exponential(Complex s, Complex c) { return ExpPolySymbol({{{c}, s}}); }

ExpPolySymbol ExpPolySymbol::kernel(Complex w) { return exponential(std::conj(w)); }

ExpPolySymbol ExpPolySymbol::normalized_kernel(Complex w) {
  return exponential(std::conj(w), std::exp(-0.5 * std::norm(w)));
}

bool ExpPolySymbol::is_constant(Complex* value) const {
  if (terms_.empty()) {
    if (value) *value = 0.0;
    return true;
  }
  if (terms_.size() != 1 || terms_[0].freq != Complex{} || terms_[0].coeffs.size() != 1) return false;
  if (value) *value = terms_[0].coeffs[0];
  return true;
}

Complex ExpPolySymbol::operator()(Complex z) const {
  Complex acc = 0.0;
  for (const auto& t : terms_) acc += detail::poly_eval(t.coeffs, z) * std::exp(t.freq * z);
  return acc;
}

double ExpPolySymbol::log_abs(Complex z) const { return 0.5 * log_norm(z); }

double ExpPolySymbol::log_norm(Complex z) const {
  if (terms_.empty()) return -std::numeric_limits<double>::infinity();
  if (terms_.size() == 1) {
    const auto& t = terms_[0];
    return std::log(std::norm(detail::poly_eval(t.coeffs, z))) + 2.0 * (t.freq * z).real();
  }
  double shift = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms_) shift = std::max(shift, (t.freq * z).real());
  Complex acc = 0.0;
  for (const auto& t : terms_) {
    const Complex e = t.freq * z;
    const double mag = std::exp(e.real() - shift);
    acc += detail::poly_eval(t.coeffs, z) * Complex(mag * std::cos(e.imag()), mag * std::sin(e.imag()));
  }
  return std::log(std::norm(acc)) + 2.0 * shift;
}

int ExpPolySymbol::max_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.degree());
  return d;
}

double ExpPolySymbol::max_freq_abs() const {
  double s = 0.0;
  for (const auto& t : terms_) s = std::max(s, std::abs(t.freq));
  return s;
}

double ExpPolySymbol::coeff_l1() const {
  double c = 0.0;
  for (const auto& t : terms_)
    for (const auto& x : t.coeffs) c += std::abs(x);
  return c;
}

ExpPolySymbol ExpPolySymbol::scaled(Complex c) const {
  std::vector<ExpPolyTerm> terms(terms_.begin(), terms_.end());
  for (auto& t : terms)
    for (auto& x : t.coeffs) x *= c;
  return ExpPolySymbol(std::move(terms));
}

ExpPolySymbol operator+(const ExpPolySymbol& f, const ExpPolySymbol& g) {
  std::vector<ExpPolyTerm> terms(f.terms_.begin(), f.terms_.end());
  terms.insert(terms.end(), g.terms_.begin(), g.terms_.end());
  return ExpPolySymbol(std::move(terms));
}

ExpPolySymbol operator-(const ExpPolySymbol& f, const ExpPolySymbol& g) { return f + g.scaled(-1.0); }

ExpPolySymbol operator*(const ExpPolySymbol& f, const ExpPolySymbol& g) {
  std::vector<ExpPolyTerm> terms;
  for (const auto& x : f.terms_)
    for (const auto& y : g.terms_) terms.push_back({detail::poly_mul(x.coeffs, y.coeffs), x.freq + y.freq});
  return ExpPolySymbol(std::move(terms));
}

bool ExpPolySymbol::operator==(const ExpPolySymbol& other) const {
  if (terms_.size() != other.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].freq != other.terms_[i].freq || terms_[i].coeffs != other.terms_[i].coeffs) return false;
  return true;
}

Complex eval_symbol(const ExpPolySymbol& f, Complex z) { return f(z); }

Complex eval_affine(const AffineMap& phi, Complex z) { return phi(z); }

ExpPolySymbol apply_operator(const OperatorSpec& spec, const ExpPolySymbol& f) {
  // (Q e^{s .})(a z + b) = Q(a z + b) e^{s b} e^{(s a) z}
  const auto& [a, b] = spec.phi;
  std::vector<ExpPolyTerm> composed;
  for (const auto& t : f.terms()) {
    auto coeffs = detail::poly_compose_affine(t.coeffs, a, b);
    const Complex factor = std::exp(t.freq * b);
    for (auto& c : coeffs) c *= factor;
    composed.push_back({std::move(coeffs), t.freq * a});
  }
  return spec.psi * ExpPolySymbol(std::move(composed));
}

ExpPolySymbol subtract(const ExpPolySymbol& f, const ExpPolySymbol& g) { return f - g; }

ExpPolySymbol diff_kernel_image(const PairSpec& pair, Complex w) {
  const auto kw = ExpPolySymbol::normalized_kernel(w);
  return apply_operator(pair.first, kw) - apply_operator(pair.second, kw);
}

}  // namespace fock
