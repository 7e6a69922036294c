#pragma once
#include <string>
#include <vector>

namespace cartier {

// One acceptance criterion outcome.  `expected_pass` is false only for the
// documented deviations (see the criterion's detail string); the acceptance
// runner treats pass == expected_pass as green.
struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  bool expected_pass = true;
  std::string detail;
  double seconds = 0.0;
};

std::vector<std::string> criterion_names();
CriterionResult run_criterion(int index, unsigned long long seed);
std::vector<CriterionResult> run_acceptance(unsigned long long seed);

// parameterized relation suite behind `suite --name relations-drw`
long drw_relation_failures(long p, long m, long deg_bound);

}  // namespace cartier
