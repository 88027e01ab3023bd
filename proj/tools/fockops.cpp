// fockops: run one JSON-described job and print a report.
//
// Exit codes: 0 all mandatory checks passed, 1 a check failed or the
// computation raised an error, 2 bad usage or an unreadable config.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "fockops.h"

namespace {

struct Options {
  std::string config;
  std::string format = "json";
  std::string out;
  uint64_t seed = 0;
  double radial_max = 0.0;
};

bool read_file(const std::string& path, std::string& text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  text = ss.str();
  return true;
}

// Which config kinds each subcommand accepts.
bool kind_matches(const std::string& sub, const std::string& text) {
  const auto has = [&](const char* kind) { return text.find(std::string("\"") + kind + "\"") != std::string::npos; };
  if (sub == "classify")
    return has("classify-single") || has("classify-difference") || has("classify-combination");
  if (sub == "ess") return has("ess-bounds");
  if (sub == "verify") return has("verify-lemmas");
  if (sub == "probe") return has("probe");
  if (sub == "matrix") return has("matrix");
  if (sub == "diverge") return has("divergence");
  return false;
}

int run(const std::string& sub, const Options& opt, bool seed_given, bool radial_given) {
  std::string text;
  if (!read_file(opt.config, text)) {
    std::fprintf(stderr, "error: cannot read config %s\n", opt.config.c_str());
    return 2;
  }
  if (!kind_matches(sub, text)) {
    std::fprintf(stderr, "error: config kind does not match subcommand '%s'\n", sub.c_str());
    return 2;
  }
  fk_job* job = nullptr;
  if (fk_job_parse(text.c_str(), &job) != FK_OK) {
    std::fprintf(stderr, "error: %s: %s\n", opt.config.c_str(), fk_last_error());
    return 2;
  }
  if (seed_given) fk_job_set_seed(job, opt.seed);
  if (radial_given && fk_job_set_radial_max(job, opt.radial_max) != FK_OK) {
    std::fprintf(stderr, "error: %s\n", fk_last_error());
    fk_job_destroy(job);
    return 2;
  }
  fk_report* report = nullptr;
  const fk_status st = fk_job_run(job, &report);
  fk_job_destroy(job);
  if (st != FK_OK) {
    std::fprintf(stderr, "error: %s\n", fk_last_error());
    return 1;
  }
  char* rendered = nullptr;
  if (fk_report_render(report, opt.format == "text" ? FK_FORMAT_TEXT : FK_FORMAT_JSON, 0, &rendered) != FK_OK) {
    std::fprintf(stderr, "error: %s\n", fk_last_error());
    fk_report_destroy(report);
    return 1;
  }
  const int code = fk_report_exit_code(report);
  fk_report_destroy(report);
  if (opt.out.empty()) {
    std::fputs(rendered, stdout);
  } else {
    std::ofstream out(opt.out, std::ios::binary);
    out << rendered;
    if (!out) {
      std::fprintf(stderr, "error: cannot write %s\n", opt.out.c_str());
      fk_string_free(rendered);
      return 2;
    }
  }
  fk_string_free(rendered);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted composition operators on Fock spaces"};
  app.set_version_flag("--version", std::string("fockops ") + fk_version());
  app.require_subcommand(1);

  Options opt;
  const std::pair<const char*, const char*> subs[] = {
      {"classify", "classify a single operator, a difference or a combination"},
      {"ess", "essential-norm bounds for a difference"},
      {"verify", "randomized checks of the kernel inequalities"},
      {"probe", "kernel probes and decay along a ray"},
      {"matrix", "norms of truncated matrices on F^2"},
      {"diverge", "monomial divergence sequence"},
  };
  std::vector<std::pair<CLI::App*, std::string>> commands;
  std::vector<std::pair<CLI::Option*, CLI::Option*>> extras;
  for (const auto& [name, help] : subs) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("--config", opt.config, "JSON job description")->required()->check(CLI::ExistingFile);
    sc->add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sc->add_option("--out", opt.out, "write the report here instead of stdout");
    auto* seed = sc->add_option("--seed", opt.seed, "override the config seed");
    auto* radial = sc->add_option("--radial-max", opt.radial_max, "fix the quadrature radius")
                       ->check(CLI::PositiveNumber);
    commands.emplace_back(sc, name);
    extras.emplace_back(seed, radial);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  for (std::size_t i = 0; i < commands.size(); ++i)
    if (commands[i].first->parsed())
      return run(commands[i].second, opt, extras[i].first->count() > 0, extras[i].second->count() > 0);
  return 2;
}
