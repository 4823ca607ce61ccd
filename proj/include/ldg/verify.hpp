#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace ldg {

struct CheckResult {
  std::string name;
  double value;      // measured deviation (or signed quantity for sign checks)
  double tolerance;
  bool passed;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  // Fault injection: perturb the closed-form eigenvalues before comparing.
  bool mutate_eigenvalues = false;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opt = {});
void print_verify_table(std::ostream& os, const std::vector<CheckResult>& checks);

}  // namespace ldg
