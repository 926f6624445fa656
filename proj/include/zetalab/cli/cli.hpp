#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "zetalab/cyclofield/modular.hpp"

namespace zetalab::cli {

inline constexpr const char* kVersion = "0.1.0";

/// One invocation: `zetalab <command> --spec <file> --p <prime> --k <deg>
/// --order <T> --bound <B> --out <path> [--threads N] [--budget M]`.
struct JobSpec {
  std::string command;  // zeta expzeta heights witt fourier ledger stratify selftest
  std::string spec;
  std::string out;
  std::string format = "json";  // json | csv
  u64 p = 2;
  unsigned k = 1;
  unsigned order = 0;  // 0: command default
  std::uint64_t bound = 0;
  unsigned degree = 1;  // height line bundle O(degree)
  unsigned threads = 1;
  std::uint64_t budget = 0;
  std::string twist = "1";  // coefficients in the basis of F_q, comma separated
  bool twist_defaulted = true;
};

struct Report {
  nlohmann::json doc;
  std::string csv;  // tabular payload, when the command has one
  int exit_code = 0;
};

/// Throws Error(Usage) or Error(ParseError) on bad arguments.
JobSpec parse_job(int argc, const char* const* argv);

/// Runs the job; module errors become failures inside the report.
Report run_job(const JobSpec& job);

/// Writes the report to job.out (stdout when empty). CSV is written when
/// job.format is csv. Keys are sorted. Throws IoError.
void emit(const Report& report, const JobSpec& job, std::ostream& fallback);

/// Exit codes: 0 pass, 1 assertion failure, 2 usage or parse error.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zetalab::cli
