// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <iostream>

#include "cuspann/selftest.hpp"

int main() {
  bool all = true;
  cuspann::run_acceptance(std::string(CUSPANN_DATA_DIR) + "/fixtures_p5_m1.json", 2024, cuspann::worker_count(), [&](const cuspann::CheckResult& r) {
    std::cout << cuspann::format_result(r) << std::endl;
    all = all && r.pass;
  });
  return all ? 0 : 1;
}
