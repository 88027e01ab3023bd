#pragma once

// Batch jobs: a JSON config describes one computation; run_job dispatches it
// and attaches numeric evidence to every symbolic answer.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fock/exponent.hpp"
#include "fock/norms.hpp"
#include "fock/symbols.hpp"

namespace fock {

enum class JobKind {
  ClassifySingle,
  ClassifyDifference,
  ClassifyCombination,
  EssBounds,
  VerifyLemmas,
  Probe,
  Matrix,
  Divergence,
};

const char* job_kind_name(JobKind kind);
std::optional<JobKind> job_kind_from_name(std::string_view name);

struct Combination {
  Complex c1;
  AffineMap phi1;
  Complex c2;
  AffineMap phi2;
};

struct VerifyDraws {
  int two_kernel = 1000;
  int two_point_pairs = 200;
  int two_point_points = 5;
  int pointwise = 1000;
};

struct Job {
  JobKind kind = JobKind::ClassifySingle;
  Exponent p{2.0};
  Exponent q{2.0};
  std::optional<OperatorSpec> op;
  std::optional<PairSpec> pair;
  std::optional<Combination> combination;
  QuadConfig quad;
  std::uint64_t seed = 42;
  std::optional<std::vector<Complex>> probes;
  std::vector<int> dims{20};
  double matrix_tol = 1e-12;
  int max_n = 200;
  Complex direction{1.0, 0.0};
  std::vector<double> radii{2.0, 4.0, 6.0, 8.0};
  VerifyDraws draws;
};

/// Throws Error(Parse) / Error(InvalidArgument) / Error(UnsupportedExponents)
/// with a "line N:" prefix pointing into `text`.
Job parse_config(std::string_view text);

nlohmann::json job_to_json(const Job& job);

struct Report {
  nlohmann::json body;
  int exit_code = 0;  // 0 all mandatory checks passed, 1 otherwise
  double elapsed_seconds = 0.0;
};

Report run_job(const Job& job);

enum class ReportFormat { Json, Text };

/// Deterministic: sorted keys, floats as %.12g. Timing is only emitted on
/// request because it would break byte-identical reruns.
std::string render_report(const Report& report, ReportFormat format, bool include_timing = false);

/// Same number formatting as render_report, for arbitrary documents.
std::string dump_json(const nlohmann::json& value);

}  // namespace fock
