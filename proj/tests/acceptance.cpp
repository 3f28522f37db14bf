// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <iostream>

#include "fowler/acceptance.hpp"

int main() {
  const auto results = fowler::run_acceptance();
  fowler::write_acceptance(std::cout, results);
  std::cout << "\n";
  fowler::write_acceptance_detail(std::cout, results);
  for (const auto& c : results) {
    if (!c.pass()) return 1;
  }
  return 0;
}
