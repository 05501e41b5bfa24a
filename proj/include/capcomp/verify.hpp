#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "capcomp/settings.hpp"

namespace capcomp {

enum class VerifySuite { counts, equivalence, bounds, outage, all };

VerifySuite parse_verify_suite(const std::string& name);
std::string to_string(VerifySuite suite);

struct VerifyOptions {
  std::size_t max_length = 16;  // longest exhaustive word
  int max_d = 4;                // RLL d range for counts/equivalence/outage
  int max_window = 8;           // SWC T range for the capacity-bound grid
  int max_outage_span = 6;      // T and L range for the outage grid
  Settings settings{};
  Execution execution = Execution::parallel;
};

struct VerifyFailure {
  std::string suite;
  std::string property;
  std::string witness;
};

struct VerifyReport {
  std::string suite;
  std::size_t checks = 0;
  std::vector<VerifyFailure> failures;

  bool ok() const noexcept { return failures.empty(); }
};

// Runs the selected property suite. `all` concatenates the four suites.
std::vector<VerifyReport> run_verify(VerifySuite suite, const VerifyOptions& options);

}  // namespace capcomp
