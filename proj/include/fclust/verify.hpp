#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fclust/oracle.hpp"

namespace fclust {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

enum class VerifyLevel { quick, full };

/// Counts answer changes over repeated queries of random pairs, and
/// answer differences between (u,v) and (v,u). Parameterized over the
/// answer source so tests can feed it a tampered oracle.
using AnswerFn = std::function<int(VertexId, VertexId)>;
long count_persistence_violations(const AnswerFn& answer, long n, long probes, int repeats,
                                  SplitMix64& rng);
long count_symmetry_violations(const AnswerFn& answer, long n, long probes, SplitMix64& rng);

// The pinned end-to-end checks, run at their stated scales by the
// self-check binary and by `verify --level full`.
CheckResult check_persistence_symmetry();
CheckResult check_noise_calibration();
CheckResult check_noiseless_exactness();
CheckResult check_spectral_recovery();
CheckResult check_balanced_pipeline();
CheckResult check_unbalanced_pipeline();
CheckResult check_size_gap_property();
CheckResult check_biased_growth();
CheckResult check_bias_test_discrimination();
CheckResult check_query_monotonicity();
CheckResult check_brute_force_concordance();

std::vector<CheckResult> acceptance_checks();

/// Fast invariant sweep across every module (< 60 s).
std::vector<CheckResult> quick_checks();

std::vector<CheckResult> run_verify(VerifyLevel level);

}  // namespace fclust
