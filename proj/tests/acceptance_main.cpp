// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <cstdio>
#include <string>

#include "cjw/checks.hpp"

int main() {
  auto reports = cjw::checks::run_acceptance();
  bool all_pass = true;
  for (const auto& rep : reports) {
    std::printf("[%s] criterion %d: %s (%.1fs)\n", rep.pass ? "PASS" : "FAIL", rep.id,
                rep.name.c_str(), rep.seconds);
    for (const auto& cl : rep.clauses) {
      std::printf("    %-24s %-4s measured=%.6g tol=%.6g%s%s\n", cl.name.c_str(),
                  cl.pass ? "ok" : "FAIL", cl.measured, cl.tolerance,
                  cl.detail.empty() ? "" : "  -- ", cl.detail.c_str());
    }
    all_pass = all_pass && rep.pass;
  }
  std::printf("%s\n", all_pass ? "ACCEPTANCE: all criteria passed"
                               : "ACCEPTANCE: failures present (see above)");
  return all_pass ? 0 : 1;
}
