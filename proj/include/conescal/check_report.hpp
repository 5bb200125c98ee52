#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace conescal {

// One violated check: the clause name, the indices of the sample elements
// involved, and the measured values that witnessed the violation.
struct CheckFailure {
  std::string clause;
  std::vector<std::size_t> indices;
  std::vector<double> values;
};

// Structured pass/fail record of a sampled axiom or lemma check.
// band_excluded counts sample configurations whose classification was
// numerically ambiguous (inside the boundary band) and which disagreed; they
// are reported separately instead of being promoted to counterexamples.
struct CheckReport {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t band_excluded = 0;
  std::vector<CheckFailure> counterexamples;

  bool pass() const { return counterexamples.empty(); }

  void record(bool ok) {
    ++checked;
    if (ok) ++passed;
  }
};

}  // namespace conescal
