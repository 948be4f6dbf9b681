#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace padiq {

struct VerifyOptions {
  long p = 0;              // 0: sweep the suite's default primes
  long cases = 0;          // 0: suite default
  std::uint64_t seed = 0;  // all randomness is a pure function of this
  int depth = 0;           // 0: PADIQ_DEPTH when set, else suite default
};

struct VerifyFailure {
  std::string input;
  std::string expected;
  std::string got;
};

struct Report {
  std::string suite;
  long cases = 0;
  std::vector<VerifyFailure> failures;
  double max_abs_error = 0.0;
  long elapsed_ms = 0;

  bool passed() const { return failures.empty(); }
};

std::vector<std::string> suite_names();

// Runs a named suite; throws std::invalid_argument on an unknown name.
Report run_suite(const std::string& suite, const VerifyOptions& opt);

}  // namespace padiq
