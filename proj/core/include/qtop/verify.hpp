#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qtop::verify {

enum class Status { Pass, Fail, Undecided };

struct CheckResult {
  std::string name;
  Status status = Status::Fail;
  std::string detail;   // witness or horizon note on fail/undecided
  double millis = 0.0;  // not serialized by default (determinism)
};

struct Options {
  std::uint64_t seed = 1;
  int game_horizon = 0;  // 0 = the per-check defaults (10/50/100)
};

struct Report {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  int exit_code() const;  // 0 pass, 1 fail, 2 undecided
};

CheckResult check_qm_axiom_suite();
CheckResult check_pi2_remetrization(std::uint64_t seed);
CheckResult check_sigma2_tree(std::uint64_t seed);
CheckResult check_incompleteness_witnesses();
CheckResult check_game_characterization(std::uint64_t seed, int horizon_override);
CheckResult check_difference_hierarchy(std::uint64_t seed);
CheckResult check_diagonal_equalizer(std::uint64_t seed);
CheckResult check_domain_layer(std::uint64_t seed);
CheckResult check_filter_conditions(std::uint64_t seed);
CheckResult check_representation_factorization();
CheckResult check_partial_metric_obstruction(std::uint64_t seed);

Report run_all(const Options& opts);

std::string status_name(Status s);

}  // namespace qtop::verify
