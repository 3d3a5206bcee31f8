// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.
#include <cstdlib>
#include <iostream>
#include <string>

#include "nmlkit/acceptance.hpp"

int main(int argc, char** argv) {
  nmlkit::AcceptanceConfig cfg;
  cfg.limits = nmlkit::Limits::from_env();
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--quick") cfg.quick = true;
    else if (a == "--seed" && i + 1 < argc) cfg.seed = std::stoull(argv[++i]);
    else {
      std::cerr << "usage: acceptance [--quick] [--seed N]\n";
      return 2;
    }
  }
  int failed = 0;
  nmlkit::run_acceptance(cfg, [&](const nmlkit::CriterionOutcome& o) {
    std::cout << nmlkit::format_outcome(o) << std::endl;
    failed += !o.pass;
  });
  std::cout << (nmlkit::kCriterionCount - failed) << "/" << nmlkit::kCriterionCount << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
