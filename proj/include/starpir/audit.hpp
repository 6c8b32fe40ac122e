#pragma once

#include <string>

#include "starpir/scheme.hpp"

namespace starpir {

// Statistical audit defaults: threshold chosen for the small query-tuple
// supports exercised at desk scale. A statistical test, not a proof.
inline constexpr double kEmpiricalTvThreshold = 0.05;
inline constexpr std::size_t kEmpiricalDefaultTrials = 20'000;

// Largest t such that every t columns of the retrieval code's generator
// are linearly independent; equals d_{D^perp} - 1. This is the number of
// colluding servers the scheme provably tolerates.
std::size_t algebraic_resistance(const LinearCode& retrieval_code);

// Outcome of one empirical comparison: the query tuples seen by the
// colluding servers across full retrievals of two different file indices.
// tv_raw is the plug-in total-variation distance between the two empirical
// distributions; tv_null is the same statistic on a random re-split of the
// pooled samples (its value under the identical-distribution hypothesis);
// tv_debiased = max(0, tv_raw - tv_null) estimates the population TV
// distance, which is zero for a private scheme.
struct EmpiricalAuditResult {
  std::vector<std::size_t> collusion_set;
  std::size_t trials = 0;
  double tv_raw = 0.0;
  double tv_null = 0.0;
  double tv_debiased = 0.0;
};

// Runs `trials` independent full retrievals per file index and compares
// what the colluding servers observe. Deterministic given the seed:
// per-trial sub-seeds are split from it, so trials may be evaluated in any
// order (or in parallel) without changing the result.
EmpiricalAuditResult empirical_audit(const SchemeParams& params,
                                     std::span<const ServerNode> nodes,
                                     const std::vector<std::size_t>& collusion_set,
                                     std::size_t index_a, std::size_t index_b,
                                     std::size_t trials, std::uint64_t seed,
                                     QueryPolicy policy = QueryPolicy::uniform);

// Enumerates the entire randomness space of the scheme and builds the
// exact distribution of the colluders' joint query tuple for every file
// index. Returns true iff all those distributions are identical.
// Budget: p^(dim(D)*m*b*s) <= 2^20 under the uniform policy.
bool exhaustive_audit(const SchemeParams& params, std::size_t file_count,
                      const std::vector<std::size_t>& collusion_set,
                      QueryPolicy policy = QueryPolicy::uniform);

struct AuditReport {
  std::size_t algebraic_t = 0;
  std::size_t requested_t = 0;
  bool passed = false;
  std::vector<EmpiricalAuditResult> empirical;
  std::vector<std::string> notes;
};

}  // namespace starpir
