// Acceptance runner: executes the numbered criteria at their pinned
// tolerances and prints one pass/fail line per criterion. With no arguments
// it runs everything; with ids (e.g. "A3 A5") it runs just those.

#include <cstdlib>
#include <cstring>
#include <iostream>

#include "liftlab/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace liftlab;
  std::vector<std::string> ids;
  int jobs = 1;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) {
      jobs = std::atoi(argv[++i]);
      continue;
    }
    ids.push_back(argv[i]);
  }
  if (ids.empty()) ids = acceptance_ids();
  if (const char* env = std::getenv("LIFTLAB_JOBS")) jobs = std::atoi(env);
  int failures = 0;
  for (const std::string& id : ids) {
    CriterionResult r;
    try {
      r = run_acceptance(id, jobs);
    } catch (const std::exception& e) {
      r.id = id;
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " (" << r.seconds << "s): "
              << r.detail << "\n";
    if (!r.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
