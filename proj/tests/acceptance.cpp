// Acceptance suite: one PASS/FAIL line per criterion.
//
// usage: acceptance <fockops-cli> <configs-dir> <scratch-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fock/classifier.hpp"
#include "fock/error.hpp"
#include "fock/essnorm.hpp"
#include "fock/job.hpp"
#include "fock/norms.hpp"
#include "fock/oracle.hpp"
#include "fock/sampling.hpp"

using namespace fock;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_corpus() { return json::parse(read_file(std::string(FOCK_TEST_DATA) + "/classification_corpus.json")); }

Job corpus_job(const json& entry) {
  const json cfg = {{"kind", "classify-single"},
                    {"p", entry["p"]},
                    {"q", entry["q"]},
                    {"operator", {{"psi", entry["psi"]}, {"phi", entry["phi"]}}}};
  return parse_config(cfg.dump());
}

Outcome norm_identities() {
  const auto t0 = Clock::now();
  double worst_mono = 0.0, worst_kernel = 0.0;
  for (double p : {0.5, 1.0, 2.0, 3.7})
    for (int n = 0; n <= 20; ++n) {
      const double q = norm_p(ExpPolySymbol::monomial(n), p);
      worst_mono = std::max(worst_mono, std::abs(q / monomial_norm(n, p) - 1.0));
    }
  for (double p : {1.0, 2.0, 4.0})
    for (double r : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5})
      for (int k = 0; k < 8; ++k) {
        const Complex w = std::polar(r, std::numbers::pi * k / 4.0 + 0.1);
        const double v = norm_p(ExpPolySymbol::kernel(w), p);
        worst_kernel = std::max(worst_kernel, std::abs(v / std::exp(0.5 * r * r) - 1.0));
      }
  const double t = seconds_since(t0);
  return {worst_mono <= 1e-6 && worst_kernel <= 1e-6 && t < 10.0,
          fmt("monomials max rel err %.2e, kernels max rel err %.2e, %.2f s", worst_mono, worst_kernel, t)};
}

Outcome stirling() {
  double lo = 1e9, hi = -1e9;
  for (double p : {2.0, 4.0}) {
    const double r = std::exp(log_monomial_norm(200, p) - log_monomial_norm_asymptotic(200, p));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo >= 0.99 && hi <= 1.01, fmt("ratio range [%.6f, %.6f] at n = 200", lo, hi)};
}

Outcome pointwise_suite() {
  Sampler rng(42);
  int passed = 0;
  double worst = 1e300;
  for (int i = 0; i < 1000; ++i) {
    const auto f = rng.symbol(3, 2, 1.5, 2.0);
    const auto z = rng.in_disk(3.0);
    const double p = rng.uniform(0.5, 4.0);
    const double scale = 1.0 + std::exp(0.5 * std::norm(z)) * norm_p(f, p);
    const double margin = pointwise_bound_margin(f, p, z);
    passed += margin >= -1e-9 * scale;
    worst = std::min(worst, margin / scale);
  }
  double equality = 0.0;
  for (Complex w : {Complex{0.0}, Complex{1.0, -0.5}, Complex{-2.0, 1.0}, Complex{0.3, 2.2}})
    for (double p : {0.5, 1.0, 2.0, 3.0}) {
      const double scale = std::exp(0.5 * std::norm(w));
      equality = std::max(equality, std::abs(pointwise_bound_margin(ExpPolySymbol::normalized_kernel(w), p, w)) / scale);
    }
  return {passed == 1000 && equality <= 1e-9,
          fmt("%d/1000 draws, min normalized margin %.3e, equality gap at (k_w, w) %.2e", passed, worst, equality)};
}

Outcome two_kernel_suite() {
  Sampler rng(42);
  int sup_ok = 0, two_ok = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto a1 = rng.in_disk(3.0), a2 = rng.in_disk(3.0), w1 = rng.in_disk(3.0), w2 = rng.in_disk(3.0);
    const auto c = lemma_est_check(a1, a2, w1, w2);
    sup_ok += c.sup_form.pass;
    two_ok += c.two_point.pass;
  }
  return {sup_ok == 1000 && two_ok == 1000, fmt("sup form %d/1000, two-point form %d/1000", sup_ok, two_ok)};
}

Outcome two_point_suite() {
  Sampler rng(42);
  int passed = 0;
  double worst = 1e300;
  for (int i = 0; i < 200; ++i) {
    const auto pair = rng.bounded_pair();
    const Exponent q = rng.uniform(0.5, 4.0);
    for (int k = 0; k < 5; ++k) {
      const auto c = eq1_check(pair, q, rng.in_disk(3.0));
      passed += c.margin >= -1e-9 * (1.0 + c.rhs);
      worst = std::min(worst, c.margin / (1.0 + c.rhs));
    }
  }
  return {passed == 1000, fmt("%d/1000 checks, min normalized margin %.3e", passed, worst)};
}

Outcome classification_battery(const json& corpus) {
  int total = 0, verdict_ok = 0, evidence_ok = 0;
  std::string first_bad;
  for (const auto& entry : corpus["specs"]) {
    ++total;
    const auto job = corpus_job(entry);
    const auto c = classify_single(*job.op, job.p, job.q);
    const bool v = verdict_name(c.verdict) == entry["expected"].get<std::string>();
    const auto ev = single_verdict_evidence(*job.op, job.p, job.q, c);
    verdict_ok += v;
    evidence_ok += ev.consistent;
    if ((!v || !ev.consistent) && first_bad.empty()) first_bad = entry["name"].get<std::string>();
  }
  std::set<std::string> cells;
  for (const auto& entry : corpus["specs"]) {
    const auto job = corpus_job(entry);
    const char* rel = job.p < job.q ? "p<q" : job.p == job.q ? "p=q" : "q<p";
    cells.insert(entry["category"].get<std::string>() + " " + rel);
  }
  int covered = 0;
  for (const char* cat : {"|a|<1", "|a|=1 bounded", "|a|=1 unbounded", "a=0"})
    for (const char* rel : {"p<q", "p=q", "q<p"}) covered += cells.count(std::string(cat) + " " + rel) > 0;
  const bool ok = total >= 24 && verdict_ok == total && evidence_ok == total && covered == 12;
  return {ok, fmt("%d specs, %d/12 cells covered, verdicts %d/%d, evidence consistent %d/%d%s%s", total, covered,
                  verdict_ok, total, evidence_ok, total, first_bad.empty() ? "" : ", first mismatch: ",
                  first_bad.c_str())};
}

Outcome divergence() {
  const int N = 200;
  const double p = 4.0, q = 2.0;
  const auto r = divergence_sequence(1.0, {1.0, 0.0}, 1.0, {-1.0, 0.0}, p, q, N);
  const double r0 = r[0];
  const double rmax = *std::max_element(r.begin(), r.end());
  // r_n for even n against 2 ||z^n||_q / ||z^n||_p in Stirling form, which grows like n^{1/(2q) - 1/(2p)}
  const double predicted = 2.0 * std::exp(log_monomial_norm_asymptotic(N, q) - log_monomial_norm_asymptotic(N, p));
  const double growth_dev = std::abs(r[N] / predicted - 1.0);
  const double slope = std::log(r[N] / r[N / 2]) / std::log(2.0);
  const double slope_expected = 1.0 / (2.0 * q) - 1.0 / (2.0 * p);
  const double slope_dev = std::abs(slope / slope_expected - 1.0);
  const bool unbounded_ok = rmax >= 10.0 * r0;
  const bool growth_ok = growth_dev <= 0.05 && slope_dev <= 0.05;
  return {unbounded_ok && growth_ok,
          fmt("max r_n / r_0 = %.4f (needs >= 10: %s); r_200 vs prediction dev %.2e, slope %.4f vs %.4f (dev %.2e): %s",
              rmax / r0, unbounded_ok ? "ok" : "not met", growth_dev, slope, slope_expected, slope_dev,
              growth_ok ? "ok" : "not met")};
}

Outcome sandwich() {
  const auto one = ExpPolySymbol::constant(1.0);
  const PairSpec pair{{one, {1.0, 0.0}}, {one, {-1.0, 0.0}}};
  const auto b = essnorm_bounds_difference(pair, 2.0, 2.0);
  const double probe = probe_lower_bound(pair, 2.0, 2.0, default_probe_points());
  const bool exact = b.lower == 1.0 && b.upper.value() == 4.0;
  const bool probe_ok = probe >= std::sqrt(2.0) - 1e-6 && b.lower <= probe && probe <= b.upper.value();

  Sampler rng(2024);
  int checked = 0, ordered = 0, probe_below = 0;
  double worst_ratio = 0.0;
  while (checked < 200) {
    const auto pr = rng.bounded_pair(false);
    if (pr.first.phi == pr.second.phi) continue;
    const Exponent p = rng.uniform(1.1, 3.0);
    const Exponent q = p.value() + rng.uniform(0.0, 2.0);
    const auto bb = essnorm_bounds_difference(pr, p, q);
    const double ess = probe_essential_lower_bound(pr, p, q, default_essential_probe_points());
    ++checked;
    ordered += bb.lower <= bb.upper.value();
    probe_below += ess <= bb.upper.value() * (1.0 + 1e-3);
    if (bb.upper.value() > 0.0) worst_ratio = std::max(worst_ratio, ess / bb.upper.value());
  }
  return {exact && probe_ok && ordered == 200 && probe_below == 200,
          fmt("(lower, upper) = (%.12g, %.12g), probe %.9f; random pairs: lower <= upper %d/200, probe <= upper %d/200 "
              "(max probe/upper %.4f)",
              b.lower, b.upper.value(), probe, ordered, probe_below, worst_ratio)};
}

Outcome matrix_oracle() {
  const auto one = ExpPolySymbol::constant(1.0);
  bool exact = true;
  {
    const auto id = hilbert_matrix({one, AffineMap::identity()}, 16);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) exact = exact && id(i, j) == Complex(i == j ? 1.0 : 0.0);
    exact = exact && std::abs(matrix_norm_estimate(id, 1e-12) - 1.0) <= 1e-12;
    const auto d = hilbert_matrix({one, {0.5, 0.0}}, 3);
    exact = exact && d(0, 0) == 1.0 && d(1, 1) == 0.5 && d(2, 2) == 0.25 && d(0, 1) == 0.0 && d(1, 0) == 0.0;
    exact = exact && std::abs(matrix_norm_estimate(d, 1e-12) - 1.0) <= 1e-12;
  }
  double rank_one_err = 0.0;
  for (Complex b : {Complex{0.5}, Complex{1.0}, Complex{1.5}, Complex{0.0, 1.5}, std::polar(1.2, 2.0)}) {
    const double v = matrix_norm_estimate(hilbert_matrix({one, AffineMap::constant(b)}, 20), 1e-14);
    rank_one_err = std::max(rank_one_err, std::abs(v - std::exp(0.5 * std::norm(b))));
  }
  Sampler rng(64);
  int monotone = 0, stable = 0;
  for (int i = 0; i < 20; ++i) {
    const auto s = rng.bounded_spec();
    double prev = 0.0, at48 = 0.0;
    bool mono = true;
    for (int n : {8, 16, 24, 32, 40, 48, 56, 64}) {
      const double v = matrix_norm_estimate(hilbert_matrix(s, n), 1e-13);
      mono = mono && v >= prev * (1.0 - 1e-9);
      if (n == 48) at48 = v;
      prev = v;
    }
    monotone += mono;
    stable += std::abs(prev - at48) <= 1e-4 * prev;
  }
  return {exact && rank_one_err <= 1e-6 && monotone == 20 && stable == 20,
          fmt("identity/diagonal exact: %s; rank-one max err %.2e; nondecreasing %d/20, stable N=48..64 %d/20",
              exact ? "yes" : "no", rank_one_err, monotone, stable)};
}

Outcome compactness_decay(const json& corpus) {
  std::vector<Complex> directions;
  for (const auto& d : corpus["directions"]) directions.emplace_back(d[0].get<double>(), d[1].get<double>());
  const auto radii = corpus["radii"].get<std::vector<double>>();
  int checked = 0, ok = 0;
  double worst = 0.0;
  for (const auto& entry : corpus["specs"]) {
    const auto job = corpus_job(entry);
    if (job.op->phi.a == Complex{} || job.op->psi.is_zero()) continue;
    if (classify_single(*job.op, job.p, job.q).verdict != Verdict::Compact) continue;
    for (const auto& u : directions) {
      const auto d = compactness_decay_probe(*job.op, job.q, u / std::abs(u), radii);
      bool dec = true;
      for (std::size_t i = 1; i < d.size(); ++i) dec = dec && d[i] < d[i - 1];
      const double ratio = d.back() / d.front();
      ++checked;
      ok += dec && ratio <= 1e-3;
      worst = std::max(worst, ratio);
    }
  }
  return {checked > 0 && ok == checked,
          fmt("%d/%d (spec, direction) rays strictly decreasing with final/initial <= 1e-3, worst ratio %.2e", ok,
              checked, worst)};
}

Outcome cli_determinism(const std::string& cli, const std::string& configs, const std::string& scratch,
                        Clock::time_point suite_start) {
  const std::pair<const char*, const char*> jobs[] = {
      {"classify", "classify_single"}, {"classify", "classify_difference"}, {"classify", "classify_combination"},
      {"ess", "ess_bounds"},           {"verify", "verify_lemmas"},         {"probe", "probe"},
      {"matrix", "matrix"},            {"diverge", "divergence"}};
  int identical = 0, total = 0;
  for (const auto& [sub, name] : jobs)
    for (const char* format : {"json", "text"}) {
      std::string outs[2];
      for (int run = 0; run < 2; ++run) {
        const std::string out = scratch + "/acceptance_" + name + "_" + format + std::to_string(run);
        const std::string cmd = "\"" + cli + "\" " + sub + " --config \"" + configs + "/" + name +
                                ".json\" --seed 11 --format " + format + " --out \"" + out + "\"";
        if (std::system(cmd.c_str()) == -1) continue;
        outs[run] = read_file(out);
      }
      ++total;
      identical += !outs[0].empty() && outs[0] == outs[1];
    }
  const double elapsed = seconds_since(suite_start);
  return {identical == total && elapsed < 120.0,
          fmt("%d/%d reports byte-identical across reruns; suite time so far %.1f s (limit 120 s)", identical, total,
              elapsed)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 4) {
    std::fprintf(stderr, "usage: %s <fockops-cli> <configs-dir> <scratch-dir>\n", argv[0]);
    return 2;
  }
  const auto start = Clock::now();
  const auto corpus = load_corpus();

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"norm identities", norm_identities},
      {"Stirling form", stirling},
      {"pointwise bound suite", pointwise_suite},
      {"two-kernel sup-norm suite", two_kernel_suite},
      {"two-point kernel estimate suite", two_point_suite},
      {"classification battery", [&] { return classification_battery(corpus); }},
      {"monomial divergence for q < p", divergence},
      {"essential-norm sandwich", sandwich},
      {"F^2 matrix oracle", matrix_oracle},
      {"compactness decay", [&] { return compactness_decay(corpus); }},
      {"CLI determinism and runtime", [&] { return cli_determinism(argv[1], argv[2], argv[3], start); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %zu (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed in %.1f s\n", criteria.size() - failed, criteria.size(), seconds_since(start));
  return failed == 0 ? 0 : 1;
}
