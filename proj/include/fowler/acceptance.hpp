#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fowler/experiments.hpp"

namespace fowler {

/// One acceptance criterion: passes iff every check passes.
struct Criterion {
  std::string name;
  std::vector<Check> checks;
  std::string error;  // set when the criterion threw instead of finishing

  bool pass() const;
};

inline constexpr std::uint64_t kAcceptanceSeed = 20240611;

/// Runs every criterion; independent criteria run concurrently.
std::vector<Criterion> run_acceptance();

/// One line per criterion: PASS/FAIL, name, then value relation bound per check.
void write_acceptance(std::ostream& os, const std::vector<Criterion>& results);

/// Same, with one indented line per check under each criterion.
void write_acceptance_detail(std::ostream& os, const std::vector<Criterion>& results);

// Individual criteria, exposed for the unit tests and the CLI.
Criterion criterion_constants();
Criterion criterion_spectral_profile();
Criterion criterion_operator_agreement();
Criterion criterion_causal_oracle();
Criterion criterion_kernel();
Criterion criterion_linear_growth(std::uint64_t seed = kAcceptanceSeed);
Criterion criterion_nonlinear_envelope();
Criterion criterion_witness();
Criterion criterion_bump_growth();
Criterion criterion_cross_scheme();

}  // namespace fowler
