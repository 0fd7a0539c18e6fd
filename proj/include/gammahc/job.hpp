#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gammahc {

/// One batch job read from the text grammar:
///   ring Z/4          (Z, Q or Z/m; default Z)
///   vars x y          (may be omitted for zero variables)
///   rel x^2 - 2       (repeatable)
///   nmax 4            (default 3)
///   bound 12          (optional truncation bound for polynomial degree)
///   cmd hh            (optional; the command line flag wins)
/// Blank lines and text after '#' are ignored.
struct JobSpec {
  std::string ring = "Z";
  std::vector<std::string> variables;
  std::vector<std::string> relations;
  int n_max = 3;
  std::optional<int> poly_bound;
  std::string command = "hh";
  std::vector<std::string> warnings;
};

/// Throws ParseError naming the line and column.
JobSpec parse_job(const std::string& text);

struct JobResult {
  std::string json;  // deterministic, pretty printed
  int exit_code = 0;
};

/// Commands: hh, hc, layers, oracle, compare, "witness24 p=<int>", selftest.
/// Module errors are reported in the JSON "errors" object with exit code 2;
/// failed checks give exit code 1.
JobResult run_job(const JobSpec& job, std::uint64_t seed = 1);

/// parse_job + run_job; a job that does not parse is reported as a
/// ParseError in the same JSON shape. Empty command / negative n_max keep the
/// values from the text.
JobResult run_text(const std::string& text, const std::string& command = "", int n_max = -1,
                   std::uint64_t seed = 1);

}  // namespace gammahc
