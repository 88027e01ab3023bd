#include "fockops.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "fock/classifier.hpp"
#include "fock/error.hpp"
#include "fock/essnorm.hpp"
#include "fock/job.hpp"
#include "fock/norms.hpp"
#include "fock/symbols.hpp"

struct fk_symbol {
  std::vector<fock::ExpPolyTerm> terms;
  fock::ExpPolySymbol build() const { return fock::ExpPolySymbol(terms); }
};

struct fk_job {
  fock::Job job;
};

struct fk_report {
  fock::Report report;
};

namespace {

thread_local std::string g_last_error;

fk_status status_of(fock::ErrorCode code) {
  using fock::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return FK_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return FK_ERR_PARSE;
    case ErrorCode::TailNotNegligible: return FK_ERR_TAIL_NOT_NEGLIGIBLE;
    case ErrorCode::ZeroWeight: return FK_ERR_ZERO_WEIGHT;
    case ErrorCode::UnsupportedExponents: return FK_ERR_UNSUPPORTED_EXPONENTS;
    case ErrorCode::ReducesToSingle: return FK_ERR_REDUCES_TO_SINGLE;
    case ErrorCode::IdenticalMaps: return FK_ERR_IDENTICAL_MAPS;
    case ErrorCode::NonzeroOffsets: return FK_ERR_NONZERO_OFFSETS;
    case ErrorCode::NoConvergence: return FK_ERR_NO_CONVERGENCE;
    case ErrorCode::NotBounded: return FK_ERR_NOT_BOUNDED;
    case ErrorCode::Domain: return FK_ERR_DOMAIN;
  }
  return FK_ERR_INTERNAL;
}

fk_status fail(fk_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

template <class F>
fk_status guarded(F&& body) {
  try {
    body();
    return FK_OK;
  } catch (const fock::Error& e) {
    return fail(status_of(e.code()), std::string(fock::error_code_name(e.code())) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(FK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FK_ERR_INTERNAL, e.what());
  }
}

fock::Complex cx(fk_complex c) { return {c.re, c.im}; }
fock::AffineMap affine(fk_affine m) { return {cx(m.a), cx(m.b)}; }

fock::Exponent exponent(const char* text, const char* name) {
  if (!text) throw fock::Error(fock::ErrorCode::InvalidArgument, std::string(name) + " is null");
  return fock::Exponent::parse(text);
}

fk_verdict verdict_of(fock::Verdict v) {
  switch (v) {
    case fock::Verdict::Unbounded: return FK_UNBOUNDED;
    case fock::Verdict::BoundedNotCompact: return FK_BOUNDED_NOT_COMPACT;
    case fock::Verdict::Compact: return FK_COMPACT;
    case fock::Verdict::IndeterminateSymbolic: break;
  }
  return FK_INDETERMINATE;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define FK_REQUIRE(ptr) \
  if (!(ptr)) return fail(FK_ERR_INVALID_ARGUMENT, #ptr " is null")

}  // namespace

extern "C" {

const char* fk_version(void) { return "0.1.0"; }
const char* fk_last_error(void) { return g_last_error.c_str(); }

const char* fk_verdict_name(fk_verdict v) {
  switch (v) {
    case FK_UNBOUNDED: return fock::verdict_name(fock::Verdict::Unbounded);
    case FK_BOUNDED_NOT_COMPACT: return fock::verdict_name(fock::Verdict::BoundedNotCompact);
    case FK_COMPACT: return fock::verdict_name(fock::Verdict::Compact);
    case FK_INDETERMINATE: return fock::verdict_name(fock::Verdict::IndeterminateSymbolic);
  }
  return "?";
}

void fk_string_free(char* s) { std::free(s); }

fk_status fk_symbol_create(fk_symbol** out) {
  FK_REQUIRE(out);
  return guarded([&] { *out = new fk_symbol; });
}

fk_status fk_symbol_add_term(fk_symbol* f, const fk_complex* coeffs, size_t n_coeffs, fk_complex s) {
  FK_REQUIRE(f);
  FK_REQUIRE(coeffs);
  if (n_coeffs == 0) return fail(FK_ERR_INVALID_ARGUMENT, "a term needs at least one coefficient");
  return guarded([&] {
    fock::ExpPolyTerm t;
    for (size_t k = 0; k < n_coeffs; ++k) t.coeffs.push_back(cx(coeffs[k]));
    t.freq = cx(s);
    auto terms = f->terms;
    terms.push_back(std::move(t));
    (void)fock::ExpPolySymbol(terms);  // validates before committing
    f->terms = std::move(terms);
  });
}

fk_status fk_symbol_eval(const fk_symbol* f, fk_complex z, fk_complex* out) {
  FK_REQUIRE(f);
  FK_REQUIRE(out);
  return guarded([&] {
    const auto v = f->build()(cx(z));
    *out = {v.real(), v.imag()};
  });
}

void fk_symbol_destroy(fk_symbol* f) { delete f; }

fk_status fk_norm_p(const fk_symbol* f, double p, double radial_max, double* out) {
  FK_REQUIRE(f);
  FK_REQUIRE(out);
  return guarded([&] {
    fock::QuadConfig cfg;
    if (radial_max > 0.0) cfg.radial_max = radial_max;
    *out = fock::norm_p(f->build(), p, cfg);
  });
}

fk_status fk_norm_sup(const fk_symbol* f, double* out) {
  FK_REQUIRE(f);
  FK_REQUIRE(out);
  return guarded([&] { *out = fock::norm_sup(f->build()); });
}

fk_status fk_classify_single(const fk_symbol* psi, fk_affine phi, const char* p, const char* q, fk_verdict* out,
                             char** branch) {
  FK_REQUIRE(psi);
  FK_REQUIRE(out);
  return guarded([&] {
    const auto c = fock::classify_single({psi->build(), affine(phi)}, exponent(p, "p"), exponent(q, "q"));
    *out = verdict_of(c.verdict);
    if (branch) *branch = dup_string(c.branch);
  });
}

fk_status fk_classify_difference(const fk_symbol* psi1, fk_affine phi1, const fk_symbol* psi2, fk_affine phi2,
                                 const char* p, const char* q, fk_verdict* out, char** branch) {
  FK_REQUIRE(psi1);
  FK_REQUIRE(psi2);
  FK_REQUIRE(out);
  return guarded([&] {
    const fock::PairSpec pair{{psi1->build(), affine(phi1)}, {psi2->build(), affine(phi2)}};
    const auto c = fock::classify_difference(pair, exponent(p, "p"), exponent(q, "q"));
    *out = verdict_of(c.verdict);
    if (branch) *branch = dup_string(c.branch);
  });
}

fk_status fk_classify_combination(fk_complex c1, fk_affine phi1, fk_complex c2, fk_affine phi2, const char* p,
                                  const char* q, fk_verdict* out) {
  FK_REQUIRE(out);
  return guarded([&] {
    const auto c =
        fock::classify_combination(cx(c1), affine(phi1), cx(c2), affine(phi2), exponent(p, "p"), exponent(q, "q"));
    *out = verdict_of(c.verdict);
  });
}

fk_status fk_ess_bounds_difference(const fk_symbol* psi1, fk_affine phi1, const fk_symbol* psi2, fk_affine phi2,
                                   const char* p, const char* q, fk_ess_bounds* out) {
  FK_REQUIRE(psi1);
  FK_REQUIRE(psi2);
  FK_REQUIRE(out);
  return guarded([&] {
    const fock::PairSpec pair{{psi1->build(), affine(phi1)}, {psi2->build(), affine(phi2)}};
    const auto b = fock::essnorm_bounds_difference(pair, exponent(p, "p"), exponent(q, "q"));
    *out = {b.lower, b.upper.value(), b.alpha, b.limsup1, b.limsup2};
  });
}

fk_status fk_job_parse(const char* config_text, fk_job** out) {
  FK_REQUIRE(config_text);
  FK_REQUIRE(out);
  return guarded([&] { *out = new fk_job{fock::parse_config(config_text)}; });
}

fk_status fk_job_set_seed(fk_job* job, uint64_t seed) {
  FK_REQUIRE(job);
  job->job.seed = seed;
  return FK_OK;
}

fk_status fk_job_set_radial_max(fk_job* job, double radial_max) {
  FK_REQUIRE(job);
  if (!(radial_max > 0.0) || !std::isfinite(radial_max))
    return fail(FK_ERR_INVALID_ARGUMENT, "radial_max must be positive and finite");
  job->job.quad.radial_max = radial_max;
  return FK_OK;
}

fk_status fk_job_run(const fk_job* job, fk_report** out) {
  FK_REQUIRE(job);
  FK_REQUIRE(out);
  return guarded([&] { *out = new fk_report{fock::run_job(job->job)}; });
}

void fk_job_destroy(fk_job* job) { delete job; }

fk_status fk_report_render(const fk_report* report, fk_format format, int include_timing, char** out) {
  FK_REQUIRE(report);
  FK_REQUIRE(out);
  return guarded([&] {
    const auto fmt = format == FK_FORMAT_TEXT ? fock::ReportFormat::Text : fock::ReportFormat::Json;
    *out = dup_string(fock::render_report(report->report, fmt, include_timing != 0));
  });
}

int fk_report_exit_code(const fk_report* report) { return report ? report->report.exit_code : 2; }

void fk_report_destroy(fk_report* report) { delete report; }

}  // extern "C"
