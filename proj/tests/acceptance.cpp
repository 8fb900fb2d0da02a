// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cstdio>

#include "qtop/verify.hpp"

int main() {
  qtop::verify::Options opts;
  opts.seed = 2024;
  auto rep = qtop::verify::run_all(opts);
  int failures = 0;
  for (const auto& c : rep.checks) {
    bool ok = c.status == qtop::verify::Status::Pass;
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.empty() ? "" : " -- ", c.detail.c_str());
    if (!ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", (int)(rep.checks.size() - failures),
              rep.checks.size());
  return failures == 0 ? 0 : 1;
}
