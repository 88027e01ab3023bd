#include "fock/job.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fock/classifier.hpp"
#include "fock/error.hpp"
#include "fock/essnorm.hpp"
#include "fock/oracle.hpp"
#include "fock/sampling.hpp"

namespace fock {

using nlohmann::json;

namespace {

constexpr const char* kToolName = "fockops";
constexpr const char* kToolVersion = "0.1.0";

constexpr std::pair<JobKind, const char*> kKindNames[] = {
    {JobKind::ClassifySingle, "classify-single"},
    {JobKind::ClassifyDifference, "classify-difference"},
    {JobKind::ClassifyCombination, "classify-combination"},
    {JobKind::EssBounds, "ess-bounds"},
    {JobKind::VerifyLemmas, "verify-lemmas"},
    {JobKind::Probe, "probe"},
    {JobKind::Matrix, "matrix"},
    {JobKind::Divergence, "divergence"},
};

// ---------------------------------------------------------------- parsing

class ConfigReader {
 public:
  explicit ConfigReader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(ErrorCode code, std::string_view key, const std::string& message) const {
    throw Error(code, "line " + std::to_string(line_of(key)) + ": " + message);
  }

  int line_of(std::string_view key) const {
    std::size_t pos = std::string_view::npos;
    if (!key.empty()) pos = text_.find("\"" + std::string(key) + "\"");
    if (pos == std::string_view::npos) return 1;
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }

  double number(const json& v, std::string_view key) const {
    if (!v.is_number()) fail(ErrorCode::Parse, key, std::string(key) + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(ErrorCode::Parse, key, std::string(key) + " must be finite");
    return x;
  }

  int integer(const json& v, std::string_view key, int lo) const {
    if (!v.is_number_integer()) fail(ErrorCode::Parse, key, std::string(key) + " must be an integer");
    const auto x = v.get<long long>();
    if (x < lo || x > 1'000'000) fail(ErrorCode::InvalidArgument, key, std::string(key) + " is out of range");
    return static_cast<int>(x);
  }

  Complex complex(const json& v, std::string_view key) const {
    if (v.is_number()) return {number(v, key), 0.0};
    if (!v.is_array() || v.size() != 2)
      fail(ErrorCode::Parse, key, std::string(key) + " must be a complex number [re, im]");
    return {number(v[0], key), number(v[1], key)};
  }

  ExpPolySymbol symbol(const json& v, std::string_view key) const {
    if (v.is_number() || (v.is_array() && v.size() == 2 && v[0].is_number()))
      return ExpPolySymbol::constant(complex(v, key));
    if (!v.is_array()) fail(ErrorCode::Parse, key, std::string(key) + " must be a list of {coeffs, s} terms");
    std::vector<ExpPolyTerm> terms;
    for (const auto& t : v) {
      if (!t.is_object() || !t.contains("coeffs"))
        fail(ErrorCode::Parse, key, std::string(key) + " terms need a \"coeffs\" list");
      ExpPolyTerm term;
      const auto& coeffs = t.at("coeffs");
      if (!coeffs.is_array() || coeffs.empty())
        fail(ErrorCode::Parse, "coeffs", "coeffs must be a nonempty list of complex numbers");
      for (const auto& c : coeffs) term.coeffs.push_back(complex(c, "coeffs"));
      term.freq = t.contains("s") ? complex(t.at("s"), "s") : Complex{};
      terms.push_back(std::move(term));
    }
    return ExpPolySymbol(std::move(terms));
  }

  AffineMap affine(const json& v, std::string_view key) const {
    if (!v.is_object() || !v.contains("a"))
      fail(ErrorCode::Parse, key, std::string(key) + " must be an object {\"a\": [re, im], \"b\": [re, im]}");
    return {complex(v.at("a"), "a"), v.contains("b") ? complex(v.at("b"), "b") : Complex{}};
  }

  OperatorSpec op(const json& v, std::string_view key) const {
    if (!v.is_object() || !v.contains("psi") || !v.contains("phi"))
      fail(ErrorCode::Parse, key, std::string(key) + " must be an object with \"psi\" and \"phi\"");
    return {symbol(v.at("psi"), "psi"), affine(v.at("phi"), "phi")};
  }

  Exponent exponent(const json& v, std::string_view key) const {
    const std::string name(key);
    try {
      if (v.is_string()) {
        const auto e = Exponent::parse(v.get<std::string>());
        return e;
      }
      if (v.is_number_integer()) {
        const auto n = v.get<long long>();
        if (n <= 0) fail(ErrorCode::InvalidArgument, key, name + " must be positive");
        return Exponent::rational(n, 1);
      }
      if (v.is_number()) {
        const double x = v.get<double>();
        if (!(x > 0.0)) fail(ErrorCode::InvalidArgument, key, name + " must be positive");
        return Exponent(x);
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidArgument) fail(ErrorCode::InvalidArgument, key, name + " must be positive");
      fail(ErrorCode::Parse, key, name + ": " + e.what());
    }
    fail(ErrorCode::Parse, key, name + " must be a number or a string like \"3/2\"");
  }

 private:
  std::string_view text_;
};

json cjson(Complex c) { return json::array({c.real(), c.imag()}); }

json xjson(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

json xjson(const ExtendedReal& v) { return xjson(v.value()); }

json symbol_json(const ExpPolySymbol& f) {
  json terms = json::array();
  for (const auto& t : f.terms()) {
    json coeffs = json::array();
    for (const auto& c : t.coeffs) coeffs.push_back(cjson(c));
    terms.push_back({{"coeffs", coeffs}, {"s", cjson(t.freq)}});
  }
  return terms;
}

json affine_json(const AffineMap& phi) { return {{"a", cjson(phi.a)}, {"b", cjson(phi.b)}}; }

json op_json(const OperatorSpec& s) { return {{"psi", symbol_json(s.psi)}, {"phi", affine_json(s.phi)}}; }

json values_json(const std::vector<std::pair<std::string, double>>& values) {
  json out = json::object();
  for (const auto& [k, v] : values) out[k] = xjson(v);
  return out;
}

// ---------------------------------------------------------------- running

class ReportBuilder {
 public:
  void evidence(const std::string& name, const std::string& oracle, double tolerance, bool mandatory, bool pass,
                json values) {
    evidence_.push_back({{"name", name},
                         {"oracle", oracle},
                         {"tolerance", xjson(tolerance)},
                         {"mandatory", mandatory},
                         {"pass", pass},
                         {"values", std::move(values)}});
    if (mandatory && !pass) failed_ = true;
  }

  void error(const std::string& code, const std::string& message) {
    errors_.push_back({{"code", code}, {"message", message}});
    failed_ = true;
  }

  json evidence_list() const { return evidence_; }
  json error_list() const { return errors_; }
  bool failed() const { return failed_; }

 private:
  json evidence_ = json::array();
  json errors_ = json::array();
  bool failed_ = false;
};

json classification_json(const Classification& c) {
  json out = {{"verdict", verdict_name(c.verdict)}, {"branch", c.branch}, {"reason", c.reason}};
  if (c.sup) out["sup_m"] = xjson(*c.sup);
  if (c.limsup) out["limsup_m"] = xjson(*c.limsup);
  return out;
}

void add_single_evidence(ReportBuilder& rb, const std::string& label, const OperatorSpec& spec, const Job& job) {
  const auto c = classify_single(spec, job.p, job.q);
  const auto ev = single_verdict_evidence(spec, job.p, job.q, c);
  json values = values_json(ev.values);
  values["verdict"] = verdict_name(c.verdict);
  rb.evidence(label, ev.oracle, ev.tolerance, true, ev.consistent, std::move(values));
}

std::vector<Complex> probe_sites() { return {0.0, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.5}, {2.0, -1.0}}; }

void add_two_point_evidence(ReportBuilder& rb, const PairSpec& pair, const Job& job) {
  json rows = json::array();
  bool pass = true;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& z : probe_sites()) {
    const auto c = eq1_check(pair, job.q, z, job.quad);
    rows.push_back({{"z", cjson(z)}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin}});
    pass = pass && c.pass;
    worst = std::min(worst, c.margin / (1.0 + c.rhs));
  }
  rb.evidence("two-point kernel estimate", "quadrature norms of L k_{phi_j(z)} vs rho * (m1 + m2)", 1e-9, true, pass,
              {{"points", rows}, {"min_normalized_margin", worst}});
}

json run_classify_single(const Job& job, ReportBuilder& rb) {
  const auto c = classify_single(*job.op, job.p, job.q);
  add_single_evidence(rb, "single-operator verdict", *job.op, job);
  return classification_json(c);
}

json run_classify_difference(const Job& job, ReportBuilder& rb) {
  const auto& pair = *job.pair;
  const auto c = classify_difference(pair, job.p, job.q);
  if (pair.first.phi == pair.second.phi) {
    add_single_evidence(rb, "reduced operator", {pair.first.psi - pair.second.psi, pair.first.phi}, job);
  } else {
    add_single_evidence(rb, "first operator", pair.first, job);
    add_single_evidence(rb, "second operator", pair.second, job);
    if (job.p <= job.q && !pair.first.psi.is_zero() && !pair.second.psi.is_zero()) add_two_point_evidence(rb, pair, job);
  }
  return classification_json(c);
}

void add_divergence_evidence(ReportBuilder& rb, const Combination& comb, const Job& job, int max_n) {
  const auto seq = divergence_sequence(comb.c1, comb.phi1, comb.c2, comb.phi2, job.p, job.q, max_n);
  const auto top = std::max_element(seq.begin(), seq.end());
  json values = {{"r0", seq.front()},
                 {"rN", seq.back()},
                 {"N", max_n},
                 {"max", *top},
                 {"argmax", static_cast<int>(top - seq.begin())}};
  rb.evidence("monomial divergence sequence", "closed-form ||L z^n||_q / ||z^n||_p", 0.0, false, true, values);
}

json run_classify_combination(const Job& job, ReportBuilder& rb) {
  const auto& comb = *job.combination;
  const auto c = classify_combination(comb.c1, comb.phi1, comb.c2, comb.phi2, job.p, job.q);
  const OperatorSpec s1{ExpPolySymbol::constant(comb.c1), comb.phi1};
  const OperatorSpec s2{ExpPolySymbol::constant(comb.c2), comb.phi2};
  add_single_evidence(rb, "first composition operator", s1, job);
  add_single_evidence(rb, "second composition operator", s2, job);
  if (comb.phi1 != comb.phi2 && comb.c1 != Complex{} && comb.c2 != Complex{}) {
    const bool both_compact = classify_single(s1, job.p, job.q).verdict == Verdict::Compact &&
                              classify_single(s2, job.p, job.q).verdict == Verdict::Compact;
    rb.evidence("equivalence with both-compact", "single-operator classifier on each C_phi", 0.0, true,
                both_compact == (c.verdict == Verdict::Compact), {{"both_compact", both_compact}});
  }
  if (comb.phi1.b == Complex{} && comb.phi2.b == Complex{}) add_divergence_evidence(rb, comb, job, job.max_n);
  return classification_json(c);
}

json run_ess_bounds(const Job& job, ReportBuilder& rb) {
  const auto& pair = *job.pair;
  const auto b = essnorm_bounds_difference(pair, job.p, job.q);
  const double upper = b.upper.value();
  const auto probes = job.probes.value_or(default_probe_points());
  const double probe = probe_lower_bound(pair, job.p, job.q, probes, job.quad);
  rb.evidence("kernel probe of ||L||", "max_w ||L k_w||_q by quadrature", job.quad.rel_tol, false, true,
              {{"probe", probe}, {"lower_le_probe", b.lower <= probe}, {"probe_count", probes.size()}});
  const double ess_probe = probe_essential_lower_bound(pair, job.p, job.q, default_essential_probe_points(), job.quad);
  rb.evidence("kernel probe of ||L||_e", "max_{|w| in {6,8}} ||L' k_w||_q, L' = L minus compact singles", 1e-3, true,
              ess_probe <= upper * (1.0 + 1e-3), {{"probe", ess_probe}, {"upper", xjson(upper)}});
  add_two_point_evidence(rb, pair, job);
  return {{"lower", b.lower}, {"upper", xjson(b.upper)}, {"alpha", b.alpha}, {"limsup1", b.limsup1},
          {"limsup2", b.limsup2}, {"probe", probe}, {"branch", "essential-norm sandwich, 1 < p <= q < inf"}};
}

json run_verify(const Job& job, ReportBuilder& rb) {
  Sampler rng(job.seed);
  json result = json::object();

  {
    int passed = 0, passed_two_point = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < job.draws.two_kernel; ++i) {
      const auto a1 = rng.in_disk(3.0), a2 = rng.in_disk(3.0), w1 = rng.in_disk(3.0), w2 = rng.in_disk(3.0);
      const auto c = lemma_est_check(a1, a2, w1, w2, job.quad);
      passed += c.sup_form.pass;
      passed_two_point += c.two_point.pass;
      worst = std::min(worst, c.sup_form.margin / (1.0 + c.sup_form.rhs));
    }
    const bool ok = passed == job.draws.two_kernel && passed_two_point == job.draws.two_kernel;
    rb.evidence("two-kernel sup-norm inequality", "grid + local ascent sup norm vs rho-weighted sum", 1e-9, true, ok,
                {{"draws", job.draws.two_kernel}, {"passed", passed}, {"passed_two_point", passed_two_point},
                 {"min_normalized_margin", xjson(worst)}});
    result["two_kernel_passed"] = passed;
  }
  {
    int passed = 0, total = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < job.draws.two_point_pairs; ++i) {
      const auto pair = rng.bounded_pair();
      const Exponent q(rng.uniform(0.5, 4.0));
      for (int k = 0; k < job.draws.two_point_points; ++k) {
        const auto c = eq1_check(pair, q, rng.in_disk(3.0), job.quad);
        passed += c.pass;
        ++total;
        worst = std::min(worst, c.margin / (1.0 + c.rhs));
      }
    }
    rb.evidence("two-point kernel estimate", "quadrature norms of L k_{phi_j(z)} vs rho * (m1 + m2)", 1e-9, true,
                passed == total,
                {{"checks", total}, {"passed", passed}, {"min_normalized_margin", xjson(worst)}});
    result["two_point_passed"] = passed;
  }
  {
    int passed = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < job.draws.pointwise; ++i) {
      const auto f = rng.symbol(3, 2, 1.5, 2.0);
      const auto z = rng.in_disk(3.0);
      const double p = rng.uniform(0.5, 4.0);
      const double norm = norm_p(f, p, job.quad);
      const double scale = 1.0 + std::exp(0.5 * std::norm(z)) * norm;
      const double margin = std::exp(0.5 * std::norm(z)) * norm - std::abs(f(z));
      passed += margin >= -1e-9 * scale;
      worst = std::min(worst, margin / scale);
    }
    rb.evidence("pointwise growth bound", "quadrature F^p norm vs |f(z)| e^{-|z|^2/2}", 1e-9, true,
                passed == job.draws.pointwise,
                {{"draws", job.draws.pointwise}, {"passed", passed}, {"min_normalized_margin", xjson(worst)}});
    result["pointwise_passed"] = passed;
  }
  return result;
}

json run_probe(const Job& job, ReportBuilder& rb) {
  const PairSpec pair = job.pair ? *job.pair : PairSpec{*job.op, {ExpPolySymbol::zero(), AffineMap::identity()}};
  const auto probes = job.probes.value_or(default_probe_points());
  json w_re = json::array(), w_im = json::array(), values = json::array();
  double best = 0.0;
  for (const auto& w : probes) {
    const double v = norm_p(diff_kernel_image(pair, w), job.q.value(), job.quad);
    w_re.push_back(w.real());
    w_im.push_back(w.imag());
    values.push_back(v);
    best = std::max(best, v);
  }
  json result = {{"probe", best}, {"w_re", w_re}, {"w_im", w_im}, {"norms", values}};
  if (job.op) {
    const auto decay = compactness_decay_probe(*job.op, job.q, job.direction, job.radii, job.quad);
    bool decreasing = true;
    for (std::size_t i = 1; i < decay.size(); ++i) decreasing = decreasing && decay[i] < decay[i - 1];
    result["decay_radii"] = job.radii;
    result["decay_norms"] = decay;
    rb.evidence("compactness decay along a ray", "||W k_{r u}||_q by quadrature", job.quad.rel_tol, false,
                true, {{"strictly_decreasing", decreasing},
                       {"final_over_initial", decay.empty() ? 0.0 : decay.back() / decay.front()}});
  }
  return result;
}

json run_matrix(const Job& job, ReportBuilder& rb) {
  json dims = json::array(), norms = json::array(), iterations = json::array();
  std::vector<double> values;
  for (int n : job.dims) {
    const auto m = hilbert_matrix(*job.op, n);
    const auto r = matrix_norm_krylov(m, job.matrix_tol);
    dims.push_back(n);
    norms.push_back(r.value);
    iterations.push_back(r.iterations);
    values.push_back(r.value);
  }
  bool monotone = true;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (job.dims[i] >= job.dims[i - 1]) monotone = monotone && values[i] >= values[i - 1] * (1.0 - 1e-9);
  rb.evidence("truncation monotonicity", "Krylov-accelerated power iteration on compressions P_N W P_N", 1e-9, true, monotone,
              {{"nondecreasing", monotone}});
  return {{"dims", dims}, {"norms", norms}, {"iterations", iterations}, {"taylor_remainder", 0.0},
          {"tol", job.matrix_tol}};
}

json run_divergence(const Job& job, ReportBuilder& rb) {
  const auto& comb = *job.combination;
  const auto seq = divergence_sequence(comb.c1, comb.phi1, comb.c2, comb.phi2, job.p, job.q, job.max_n);
  const auto top = std::max_element(seq.begin(), seq.end());
  json result = {{"sequence", seq},
                 {"r0", seq.front()},
                 {"max", *top},
                 {"argmax", static_cast<int>(top - seq.begin())},
                 {"max_over_r0", seq.front() > 0.0 ? xjson(*top / seq.front()) : json("inf")}};
  if (job.max_n >= 1) {
    const int n = job.max_n;
    const double weight = std::abs(comb.c1 * detail::int_pow(comb.phi1.a, n) + comb.c2 * detail::int_pow(comb.phi2.a, n));
    const double predicted = weight * std::exp(log_monomial_norm_asymptotic(n, job.q.value()) -
                                               log_monomial_norm_asymptotic(n, job.p.value()));
    const double dev = predicted > 0.0 ? std::abs(seq.back() / predicted - 1.0) : 0.0;
    result["asymptotic_prediction_at_N"] = predicted;
    rb.evidence("asymptotic growth", "Stirling form of ||z^n||_q / ||z^n||_p", 0.05, false, dev <= 0.05,
                {{"relative_deviation_at_N", dev}});
  }
  return result;
}

// ---------------------------------------------------------------- rendering

void format_number(std::string& out, const json& v) {
  char buf[40];
  if (v.is_number_integer()) {
    std::snprintf(buf, sizeof buf, "%lld", v.get<long long>());
  } else if (v.is_number_unsigned()) {
    std::snprintf(buf, sizeof buf, "%llu", v.get<unsigned long long>());
  } else {
    const double x = v.get<double>();
    std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  }
  out += buf;
}

void dump_rec(std::string& out, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad_in + json(it.key()).dump() + ": ";
      dump_rec(out, it.value(), indent + 1);
    }
    out += "\n" + pad + "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      out += "[]";
      return;
    }
    const bool flat = std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive(); });
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        dump_rec(out, v[i], indent + 1);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ",\n";
      out += pad_in;
      dump_rec(out, v[i], indent + 1);
    }
    out += "\n" + pad + "]";
  } else if (v.is_number()) {
    format_number(out, v);
  } else {
    out += v.dump();
  }
}

void text_rec(std::string& out, const json& v, const std::string& prefix) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      text_rec(out, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    return;
  }
  if (v.is_array() && !v.empty() && !v[0].is_primitive()) {
    for (std::size_t i = 0; i < v.size(); ++i) text_rec(out, v[i], prefix + "[" + std::to_string(i) + "]");
    return;
  }
  out += "  " + prefix + ": ";
  if (v.is_array() || v.is_number())
    dump_rec(out, v, 0);
  else if (v.is_string())
    out += v.get<std::string>();
  else
    out += v.dump();
  out += "\n";
}

}  // namespace

const char* job_kind_name(JobKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "?";
}

std::optional<JobKind> job_kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kKindNames)
    if (name == n) return k;
  return std::nullopt;
}

Job parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    const auto last_nl = text.rfind('\n', upto == 0 ? 0 : upto - 1);
    const auto column = last_nl == std::string_view::npos ? upto + 1 : upto - last_nl;
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                      ": invalid JSON (" + e.what() + ")");
  }
  const ConfigReader rd(text);
  if (!doc.is_object()) rd.fail(ErrorCode::Parse, "", "config must be a JSON object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) rd.fail(ErrorCode::Parse, "kind", "missing string field \"kind\"");
  const auto kind = job_kind_from_name(doc["kind"].get<std::string>());
  if (!kind) rd.fail(ErrorCode::Parse, "kind", "unknown kind \"" + doc["kind"].get<std::string>() + "\"");

  Job job;
  job.kind = *kind;
  const bool needs_exponents = job.kind != JobKind::Matrix && job.kind != JobKind::VerifyLemmas;
  for (const char* key : {"p", "q"}) {
    if (doc.contains(key)) {
      (key[0] == 'p' ? job.p : job.q) = rd.exponent(doc[key], key);
    } else if (needs_exponents) {
      rd.fail(ErrorCode::Parse, "kind", std::string("missing exponent \"") + key + "\"");
    }
  }

  if (doc.contains("operator")) job.op = rd.op(doc["operator"], "operator");
  if (doc.contains("pair")) {
    const auto& pr = doc["pair"];
    if (!pr.is_object() || !pr.contains("first") || !pr.contains("second"))
      rd.fail(ErrorCode::Parse, "pair", "pair must be an object with \"first\" and \"second\"");
    job.pair = PairSpec{rd.op(pr["first"], "first"), rd.op(pr["second"], "second")};
  }
  if (doc.contains("combination")) {
    const auto& c = doc["combination"];
    for (const char* k : {"c1", "phi1", "c2", "phi2"})
      if (!c.is_object() || !c.contains(k))
        rd.fail(ErrorCode::Parse, "combination", std::string("combination needs \"") + k + "\"");
    job.combination = Combination{rd.complex(c["c1"], "c1"), rd.affine(c["phi1"], "phi1"), rd.complex(c["c2"], "c2"),
                                  rd.affine(c["phi2"], "phi2")};
  }
  if (doc.contains("quad")) {
    const auto& qd = doc["quad"];
    if (!qd.is_object()) rd.fail(ErrorCode::Parse, "quad", "quad must be an object");
    if (qd.contains("radial_max")) job.quad.radial_max = rd.number(qd["radial_max"], "radial_max");
    if (qd.contains("radial_nodes")) job.quad.radial_nodes = rd.integer(qd["radial_nodes"], "radial_nodes", 16);
    if (qd.contains("angular_nodes")) job.quad.angular_nodes = rd.integer(qd["angular_nodes"], "angular_nodes", 16);
    if (qd.contains("rel_tol")) job.quad.rel_tol = rd.number(qd["rel_tol"], "rel_tol");
    try {
      job.quad.validate();
    } catch (const Error& e) {
      rd.fail(ErrorCode::InvalidArgument, "quad", e.what());
    }
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer())
      rd.fail(ErrorCode::Parse, "seed", "seed must be a nonnegative integer");
    if (doc["seed"].is_number_integer() && doc["seed"].get<long long>() < 0)
      rd.fail(ErrorCode::Parse, "seed", "seed must be a nonnegative integer");
    job.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("probes")) {
    if (!doc["probes"].is_array()) rd.fail(ErrorCode::Parse, "probes", "probes must be a list of complex numbers");
    std::vector<Complex> probes;
    for (const auto& w : doc["probes"]) probes.push_back(rd.complex(w, "probes"));
    job.probes = std::move(probes);
  }
  if (doc.contains("dims")) {
    if (!doc["dims"].is_array() || doc["dims"].empty())
      rd.fail(ErrorCode::Parse, "dims", "dims must be a nonempty list of integers");
    job.dims.clear();
    for (const auto& n : doc["dims"]) job.dims.push_back(rd.integer(n, "dims", 1));
    if (*std::max_element(job.dims.begin(), job.dims.end()) > 512)
      rd.fail(ErrorCode::InvalidArgument, "dims", "dims must not exceed 512");
  }
  if (doc.contains("tol")) {
    job.matrix_tol = rd.number(doc["tol"], "tol");
    if (!(job.matrix_tol > 0.0)) rd.fail(ErrorCode::InvalidArgument, "tol", "tol must be positive");
  }
  if (doc.contains("N")) job.max_n = rd.integer(doc["N"], "N", 0);
  if (doc.contains("direction")) {
    job.direction = rd.complex(doc["direction"], "direction");
    if (std::abs(std::abs(job.direction) - 1.0) > 1e-12)
      rd.fail(ErrorCode::InvalidArgument, "direction", "direction must have modulus 1");
  }
  if (doc.contains("radii")) {
    if (!doc["radii"].is_array()) rd.fail(ErrorCode::Parse, "radii", "radii must be a list of numbers");
    job.radii.clear();
    for (const auto& r : doc["radii"]) job.radii.push_back(rd.number(r, "radii"));
  }
  if (doc.contains("draws")) {
    const auto& d = doc["draws"];
    if (!d.is_object()) rd.fail(ErrorCode::Parse, "draws", "draws must be an object");
    if (d.contains("two_kernel")) job.draws.two_kernel = rd.integer(d["two_kernel"], "two_kernel", 0);
    if (d.contains("two_point_pairs")) job.draws.two_point_pairs = rd.integer(d["two_point_pairs"], "two_point_pairs", 0);
    if (d.contains("two_point_points")) job.draws.two_point_points = rd.integer(d["two_point_points"], "two_point_points", 0);
    if (d.contains("pointwise")) job.draws.pointwise = rd.integer(d["pointwise"], "pointwise", 0);
  }

  switch (job.kind) {
    case JobKind::ClassifySingle:
    case JobKind::Matrix:
      if (!job.op) rd.fail(ErrorCode::Parse, "kind", std::string(job_kind_name(job.kind)) + " needs \"operator\"");
      break;
    case JobKind::ClassifyDifference:
    case JobKind::EssBounds:
      if (!job.pair) rd.fail(ErrorCode::Parse, "kind", std::string(job_kind_name(job.kind)) + " needs \"pair\"");
      break;
    case JobKind::ClassifyCombination:
    case JobKind::Divergence:
      if (!job.combination)
        rd.fail(ErrorCode::Parse, "kind", std::string(job_kind_name(job.kind)) + " needs \"combination\"");
      if (!(job.q < job.p))
        rd.fail(ErrorCode::UnsupportedExponents, "q",
                std::string("UnsupportedExponents: ") + job_kind_name(job.kind) +
                    " needs q < p (use classify-difference when p <= q)");
      break;
    case JobKind::Probe:
      if (!job.op && !job.pair) rd.fail(ErrorCode::Parse, "kind", "probe needs \"operator\" or \"pair\"");
      if (job.q.is_infinite()) rd.fail(ErrorCode::InvalidArgument, "q", "probe needs finite q");
      break;
    case JobKind::VerifyLemmas:
      break;
  }
  return job;
}

json job_to_json(const Job& job) {
  json j = {{"kind", job_kind_name(job.kind)}, {"p", job.p.to_string()}, {"q", job.q.to_string()}};
  if (job.op) j["operator"] = op_json(*job.op);
  if (job.pair) j["pair"] = {{"first", op_json(job.pair->first)}, {"second", op_json(job.pair->second)}};
  if (job.combination)
    j["combination"] = {{"c1", cjson(job.combination->c1)}, {"phi1", affine_json(job.combination->phi1)},
                        {"c2", cjson(job.combination->c2)}, {"phi2", affine_json(job.combination->phi2)}};
  json quad = {{"radial_nodes", job.quad.radial_nodes}, {"angular_nodes", job.quad.angular_nodes},
               {"rel_tol", job.quad.rel_tol}};
  quad["radial_max"] = job.quad.radial_max ? json(*job.quad.radial_max) : json("auto");
  j["quad"] = quad;
  switch (job.kind) {
    case JobKind::Probe:
      j["probes_count"] = job.probes ? job.probes->size() : default_probe_points().size();
      j["direction"] = cjson(job.direction);
      j["radii"] = job.radii;
      break;
    case JobKind::Matrix:
      j["dims"] = job.dims;
      j["tol"] = job.matrix_tol;
      break;
    case JobKind::Divergence:
    case JobKind::ClassifyCombination:
      j["N"] = job.max_n;
      break;
    case JobKind::VerifyLemmas:
      j["draws"] = {{"two_kernel", job.draws.two_kernel}, {"two_point_pairs", job.draws.two_point_pairs},
                    {"two_point_points", job.draws.two_point_points}, {"pointwise", job.draws.pointwise}};
      break;
    default:
      break;
  }
  return j;
}

Report run_job(const Job& job) {
  const auto start = std::chrono::steady_clock::now();
  ReportBuilder rb;
  json result = json::object();
  try {
    switch (job.kind) {
      case JobKind::ClassifySingle: result = run_classify_single(job, rb); break;
      case JobKind::ClassifyDifference: result = run_classify_difference(job, rb); break;
      case JobKind::ClassifyCombination: result = run_classify_combination(job, rb); break;
      case JobKind::EssBounds: result = run_ess_bounds(job, rb); break;
      case JobKind::VerifyLemmas: result = run_verify(job, rb); break;
      case JobKind::Probe: result = run_probe(job, rb); break;
      case JobKind::Matrix: result = run_matrix(job, rb); break;
      case JobKind::Divergence: result = run_divergence(job, rb); break;
    }
  } catch (const Error& e) {
    rb.error(error_code_name(e.code()), e.what());
  } catch (const std::exception& e) {
    rb.error("Internal", e.what());
  }
  Report report;
  report.exit_code = rb.failed() ? 1 : 0;
  report.body = {{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
                 {"seed", job.seed},
                 {"job", job_to_json(job)},
                 {"result", result},
                 {"evidence", rb.evidence_list()},
                 {"errors", rb.error_list()},
                 {"status", rb.error_list().empty() ? (rb.failed() ? "check-failed" : "ok") : "error"},
                 {"exit_code", report.exit_code}};
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string dump_json(const json& value) {
  std::string out;
  dump_rec(out, value, 0);
  return out;
}

std::string render_report(const Report& report, ReportFormat format, bool include_timing) {
  json body = report.body;
  if (include_timing) body["elapsed_seconds"] = report.elapsed_seconds;
  if (format == ReportFormat::Json) return dump_json(body) + "\n";

  std::string out;
  const auto& tool = body["tool"];
  out += tool["name"].get<std::string>() + " " + tool["version"].get<std::string>() +
         "  kind=" + body["job"]["kind"].get<std::string>() + "  seed=" + std::to_string(body["seed"].get<std::uint64_t>()) +
         "  status=" + body["status"].get<std::string>() + "\n";
  const auto& result = body["result"];
  if (result.contains("verdict")) out += "verdict: " + result["verdict"].get<std::string>() + "\n";
  if (result.contains("branch")) out += "branch: " + result["branch"].get<std::string>() + "\n";
  out += "result:\n";
  json rest = result;
  rest.erase("verdict");
  rest.erase("branch");
  text_rec(out, rest, "");
  out += "evidence:\n";
  for (const auto& ev : body["evidence"]) {
    out += std::string("  [") + (ev["pass"].get<bool>() ? "PASS" : "FAIL") + "] " + ev["name"].get<std::string>() +
           (ev["mandatory"].get<bool>() ? "" : " (informational)") + "\n";
    out += "    oracle: " + ev["oracle"].get<std::string>() + "\n";
    std::string tol;
    dump_rec(tol, ev["tolerance"], 0);
    out += "    tolerance: " + tol + "\n";
    std::string vals;
    text_rec(vals, ev["values"], "");
    for (std::size_t pos = 0; pos < vals.size();) {
      const auto nl = vals.find('\n', pos);
      out += "  " + vals.substr(pos, nl - pos + 1);
      pos = nl + 1;
    }
  }
  for (const auto& e : body["errors"])
    out += "error: " + e["code"].get<std::string>() + ": " + e["message"].get<std::string>() + "\n";
  if (include_timing) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "elapsed: %.3f s\n", report.elapsed_seconds);
    out += buf;
  }
  out += "exit_code: " + std::to_string(report.exit_code) + "\n";
  return out;
}

}  // namespace fock
