#pragma once

#include <string>
#include <vector>

namespace bslab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  std::string detail;  // one-line summary of the measured quantities
};

// Runs the numbered verification criteria (all of them when `only` is empty)
// and returns one result per criterion. Throws only on internal errors; an
// assertion miss is reported as pass = false with the reason in detail.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {});

// Prints one PASS/FAIL line per criterion; returns 0 iff all passed.
int acceptance_main(const std::vector<int>& only = {});

}  // namespace bslab
