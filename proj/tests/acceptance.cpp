// Acceptance gate: runs every named check suite and prints one pass/fail
// line per criterion.  Exits nonzero if any suite fails.

#include <chrono>
#include <cstdio>

#include "optikit/suites.hpp"

int main() {
  using namespace optikit;
  SuiteConfig cfg;
  int failures = 0;
  for (const auto& [id, fn] : suites::registry()) {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::vector<std::string> notes;
    try {
      SuiteResult r = fn(cfg);
      pass = r.pass;
      notes = std::move(r.notes);
    } catch (const std::exception& e) {
      notes.push_back(std::string("exception: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("%s %-22s (%lld ms)\n", pass ? "PASS" : "FAIL", id.c_str(),
                static_cast<long long>(ms));
    if (!pass) {
      ++failures;
      for (const std::string& n : notes) std::printf("       %s\n", n.c_str());
    }
    std::fflush(stdout);
  }
  if (failures) std::printf("%d suite(s) failed\n", failures);
  return failures != 0;
}
