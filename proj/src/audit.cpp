#include "starpir/audit.hpp"

#include <algorithm>
#include <map>

#include "starpir/combinatorics.hpp"

namespace starpir {

namespace {
constexpr std::uint64_t kDualDistanceBudget = std::uint64_t{1} << 22;
constexpr std::uint64_t kSubsetBudget = 1'000'000;
constexpr std::uint64_t kExhaustiveBudget = std::uint64_t{1} << 20;

std::vector<std::size_t> checked_collusion_set(const std::vector<std::size_t>& t,
                                               std::size_t n) {
  if (t.empty()) throw InvalidArgument("audit: collusion set must be nonempty");
  std::vector<std::size_t> sorted = t;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("audit: duplicate server in collusion set");
  }
  if (sorted.back() >= n) throw IndexOutOfRange("audit: collusion server out of range");
  return sorted;
}

// Serializes the queries seen by the (sorted) collusion set during one
// iteration, appending to key. Little-endian 32-bit per symbol.
void append_observation(std::string& key, const MatrixFp& queries,
                        const std::vector<std::size_t>& collusion) {
  for (std::size_t j : collusion) {
    for (std::size_t c = 0; c < queries.cols(); ++c) {
      const auto v = static_cast<std::uint32_t>(queries.at(j, c));
      key.push_back(static_cast<char>(v & 0xff));
      key.push_back(static_cast<char>((v >> 8) & 0xff));
      key.push_back(static_cast<char>((v >> 16) & 0xff));
      key.push_back(static_cast<char>((v >> 24) & 0xff));
    }
  }
}

// Plug-in TV distance between two count maps with equal totals. Integer
// accumulation, so the result is exact and order-independent.
double tv_distance(const std::map<std::string, std::uint64_t>& a,
                   const std::map<std::string, std::uint64_t>& b, std::uint64_t total) {
  std::uint64_t diff = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      diff += ia->second;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      diff += ib->second;
      ++ib;
    } else {
      diff += ia->second > ib->second ? ia->second - ib->second : ib->second - ia->second;
      ++ia;
      ++ib;
    }
  }
  return static_cast<double>(diff) / (2.0 * static_cast<double>(total));
}
}  // namespace

std::size_t algebraic_resistance(const LinearCode& retrieval_code) {
  const std::size_t n = retrieval_code.length();
  const std::size_t k = retrieval_code.dimension();
  const MatrixFp& gen = retrieval_code.generator();
  for (std::size_t j = 0; j < n; ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < k && zero; ++i) zero = gen.at(i, j) == 0;
    if (zero) return 0;  // a standard basis vector lies in the dual
  }
  if (k == n) return n;
  const std::uint64_t p = retrieval_code.field().modulus();
  if (pow_capped(p, n - k, kDualDistanceBudget) <= kDualDistanceBudget) {
    return dual(retrieval_code).min_distance() - 1;
  }
  // column-subset route: find the first t whose subsets are not all independent
  for (std::size_t t = 1; t <= k; ++t) {
    if (binomial_capped(n, t, kSubsetBudget) > kSubsetBudget) {
      throw BudgetExceeded("algebraic_resistance: subset enumeration too large");
    }
    const bool all_independent =
        for_each_combination(n, t, [&](const std::vector<std::size_t>& cols) {
          return rank(gen.select_columns(cols)) == cols.size();
        });
    if (!all_independent) return t - 1;
  }
  return k;
}

EmpiricalAuditResult empirical_audit(const SchemeParams& params,
                                     std::span<const ServerNode> nodes,
                                     const std::vector<std::size_t>& collusion_set,
                                     std::size_t index_a, std::size_t index_b,
                                     std::size_t trials, std::uint64_t seed,
                                     QueryPolicy policy) {
  const std::size_t n = params.storage_code().length();
  const auto collusion = checked_collusion_set(collusion_set, n);
  if (trials == 0) throw InvalidArgument("empirical_audit: trials must be positive");
  if (index_a == index_b) throw InvalidArgument("empirical_audit: need two distinct indices");

  std::vector<std::string> observations[2];
  std::map<std::string, std::uint64_t> counts[2];
  const std::size_t indices[2] = {index_a, index_b};
  for (int side = 0; side < 2; ++side) {
    observations[side].reserve(trials);
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const std::uint64_t sub_seed =
          mix_seed(seed, static_cast<std::uint64_t>(side) * trials + trial + 1);
      auto [file, transcript] = run_retrieval(nodes, params, indices[side], sub_seed, policy);
      std::string key;
      for (const IterationRecord& it : transcript.iterations) {
        append_observation(key, it.query_set.queries, collusion);
      }
      ++counts[side][key];
      observations[side].push_back(std::move(key));
    }
  }
  EmpiricalAuditResult result;
  result.collusion_set = collusion;
  result.trials = trials;
  result.tv_raw = tv_distance(counts[0], counts[1], trials);

  // Null calibration: pool both samples, re-split at random, and measure
  // the same statistic. Under identical distributions tv_raw concentrates
  // at this level (finite-sample bias), so the difference estimates the
  // population TV distance.
  std::vector<std::string> pooled;
  pooled.reserve(2 * trials);
  for (auto& o : observations[0]) pooled.push_back(std::move(o));
  for (auto& o : observations[1]) pooled.push_back(std::move(o));
  Rng shuffle_rng(mix_seed(seed, 0x51e17ULL));
  for (std::size_t i = pooled.size(); i > 1; --i) {
    std::swap(pooled[i - 1], pooled[shuffle_rng.next_below(i)]);
  }
  std::map<std::string, std::uint64_t> split_a, split_b;
  for (std::size_t i = 0; i < trials; ++i) ++split_a[pooled[i]];
  for (std::size_t i = trials; i < 2 * trials; ++i) ++split_b[pooled[i]];
  result.tv_null = tv_distance(split_a, split_b, trials);
  result.tv_debiased = std::max(0.0, result.tv_raw - result.tv_null);
  return result;
}

bool exhaustive_audit(const SchemeParams& params, std::size_t file_count,
                      const std::vector<std::size_t>& collusion_set, QueryPolicy policy) {
  const std::size_t n = params.storage_code().length();
  const auto collusion = checked_collusion_set(collusion_set, n);
  if (file_count == 0) throw InvalidArgument("exhaustive_audit: file count must be positive");
  const std::size_t b = params.rows_per_file();
  const std::size_t s = params.iterations();
  const std::size_t kd = params.retrieval_code().dimension();
  const std::uint64_t p = params.storage_code().field().modulus();
  const FieldSpec& f = params.storage_code().field();

  const std::size_t digits = kd * file_count * b * s;
  if (policy == QueryPolicy::uniform &&
      pow_capped(p, digits, kExhaustiveBudget) > kExhaustiveBudget) {
    throw BudgetExceeded("exhaustive_audit: randomness space exceeds the budget");
  }

  std::vector<std::map<std::string, std::uint64_t>> dist(file_count);
  std::vector<std::uint64_t> odometer(digits, 0);
  for (;;) {
    // one point of the randomness space: s iterations of (m*b) messages
    for (std::size_t i = 0; i < file_count; ++i) {
      std::string key;
      for (std::size_t u = 0; u < s; ++u) {
        MatrixFp messages(f, file_count * b, kd);
        if (policy == QueryPolicy::uniform) {
          for (std::size_t r = 0; r < file_count * b; ++r)
            for (std::size_t cc = 0; cc < kd; ++cc)
              messages.set(r, cc, odometer[(u * file_count * b + r) * kd + cc]);
        } else {
          for (std::size_t r = 0; r < file_count * b; ++r) messages.set(r, 0, 1);
        }
        const QuerySet qs = queries_from_messages(params, file_count, i, u, messages);
        append_observation(key, qs.queries, collusion);
      }
      ++dist[i][key];
    }
    if (policy != QueryPolicy::uniform) break;  // a single deterministic point
    std::size_t pos = digits;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++odometer[pos] < p) {
        done = false;
        break;
      }
      odometer[pos] = 0;
    }
    if (done) break;
  }
  for (std::size_t i = 1; i < file_count; ++i) {
    if (dist[i] != dist[0]) return false;
  }
  return true;
}

}  // namespace starpir
