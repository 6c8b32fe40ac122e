#include "starpir/scheme.hpp"

#include <algorithm>
#include <numeric>

#include "starpir/combinatorics.hpp"

namespace starpir {

namespace {
constexpr std::uint64_t kJSearchBudget = 100'000;  // size-|J| subset search
constexpr std::uint64_t kJCheckBudget = 1'000'000;  // k-subsets of J

// Minimum distance, preferring structure over enumeration: cached value,
// then the MDS criterion (cheap at these lengths and satisfied by every
// GRS-built star product), then exhaustive enumeration.
std::size_t distance_of(const LinearCode& code) {
  if (auto d = code.cached_min_distance()) return *d;
  bool mds = false;
  try {
    mds = is_mds(code);
  } catch (const BudgetExceeded&) {
  }
  if (mds) return code.length() - code.dimension() + 1;
  return code.min_distance();
}

// Every k-subset of J must be an information set of C (the stated
// correctness condition); in relaxed mode only the per-row unions that the
// iteration schedule actually uses are checked.
void validate_j(const LinearCode& storage_code, const std::vector<std::size_t>& j,
                const std::vector<std::vector<std::vector<std::size_t>>>& position_sets,
                bool relaxed) {
  const std::size_t k = storage_code.dimension();
  if (relaxed) {
    const std::size_t s = position_sets.size();
    const std::size_t b = position_sets.front().size();
    for (std::size_t a = 0; a < b; ++a) {
      std::vector<std::size_t> cols;
      for (std::size_t u = 0; u < s; ++u) {
        for (std::size_t pos : position_sets[u][a]) cols.push_back(j[pos]);
      }
      std::sort(cols.begin(), cols.end());
      if (!is_information_set(storage_code, cols)) {
        throw NoValidJ("derive_params: a per-row server union is not an information set");
      }
    }
    return;
  }
  if (j.size() == k) {
    if (!is_information_set(storage_code, j)) {
      throw NoValidJ("derive_params: J is not an information set of the storage code");
    }
    return;
  }
  if (binomial_capped(j.size(), k, kJCheckBudget) > kJCheckBudget) {
    throw BudgetExceeded("derive_params: too many k-subsets of J to validate");
  }
  const bool ok = for_each_combination(j.size(), k, [&](const std::vector<std::size_t>& pick) {
    std::vector<std::size_t> cols(pick.size());
    for (std::size_t i = 0; i < pick.size(); ++i) cols[i] = j[pick[i]];
    std::sort(cols.begin(), cols.end());
    return is_information_set(storage_code, cols);
  });
  if (!ok) throw NoValidJ("derive_params: some k-subset of J is not an information set");
}
}  // namespace

std::vector<std::vector<std::vector<std::size_t>>> build_index_positions(
    std::size_t j_size, std::size_t rows_per_file, std::size_t iterations, std::size_t stride) {
  std::vector<std::vector<std::vector<std::size_t>>> table(
      iterations, std::vector<std::vector<std::size_t>>(rows_per_file));
  for (std::size_t a = 0; a < rows_per_file; ++a) {
    for (std::size_t t = 0; t < stride; ++t) table[0][a].push_back(a * stride + t);
  }
  for (std::size_t u = 1; u < iterations; ++u) {
    for (std::size_t a = 0; a < rows_per_file; ++a) {
      for (std::size_t pos : table[u - 1][a]) table[u][a].push_back((pos + stride) % j_size);
    }
  }
  return table;
}

SchemeParams derive_params(const LinearCode& storage_code, const LinearCode& retrieval_code,
                           const SchemeOptions& opts) {
  if (!(storage_code.field() == retrieval_code.field())) {
    throw FieldMismatch("derive_params: storage and retrieval codes use different fields");
  }
  if (storage_code.length() != retrieval_code.length()) {
    throw DimensionMismatch("derive_params: storage and retrieval codes differ in length");
  }
  const std::size_t n = storage_code.length();
  const std::size_t k = storage_code.dimension();

  LinearCode star = star_product(storage_code, retrieval_code);
  const std::size_t c = distance_of(star) - 1;
  if (c == 0) {
    throw RateZero("derive_params: d_{C*D} = 1, the scheme retrieves nothing per iteration");
  }

  const std::size_t l = std::lcm(c, k);
  const std::size_t b = l / k;
  const std::size_t s = l / c;
  const std::size_t g = k / s;  // == c / b

  const std::size_t j_size = std::max(c, k);
  std::vector<std::size_t> j;
  if (opts.j_choice) {
    j = *opts.j_choice;
    if (j.size() != j_size) throw InvalidArgument("derive_params: J must have size max{c,k}");
    std::vector<std::size_t> sorted = j;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() ||
        (!sorted.empty() && sorted.back() >= n)) {
      throw InvalidArgument("derive_params: J entries must be distinct server indices");
    }
  } else if (c <= k) {
    // condition (i): any information set works; take the first one
    j = rref(storage_code.generator()).pivots;
  } else {
    bool is_storage_mds = false;
    try {
      is_storage_mds = is_mds(storage_code);
    } catch (const BudgetExceeded&) {
    }
    if (is_storage_mds) {
      for (std::size_t i = 0; i < j_size; ++i) j.push_back(i);
    } else {
      if (binomial_capped(n, j_size, kJSearchBudget) > kJSearchBudget) {
        throw NoValidJ("derive_params: J search space exceeds the budget");
      }
      auto positions = build_index_positions(j_size, b, s, g);
      bool found = false;
      for_each_combination(n, j_size, [&](const std::vector<std::size_t>& candidate) {
        try {
          validate_j(storage_code, candidate, positions, opts.relaxed_j);
        } catch (const NoValidJ&) {
          return true;  // keep searching
        }
        j = candidate;
        found = true;
        return false;
      });
      if (!found) throw NoValidJ("derive_params: no admissible retrieval set J exists");
    }
  }

  auto positions = build_index_positions(j_size, b, s, g);
  validate_j(storage_code, j, positions, opts.relaxed_j);

  SchemeParams params(storage_code, retrieval_code, star, dual(star).generator());
  params.c_ = c;
  params.b_ = b;
  params.s_ = s;
  params.g_ = g;
  params.j_ = std::move(j);
  params.relaxed_j_ = opts.relaxed_j;
  params.sets_.assign(s, std::vector<std::vector<std::size_t>>(b));
  for (std::size_t u = 0; u < s; ++u) {
    for (std::size_t a = 0; a < b; ++a) {
      for (std::size_t pos : positions[u][a]) params.sets_[u][a].push_back(params.j_[pos]);
    }
  }
  return params;
}

QuerySet queries_from_messages(const SchemeParams& params, std::size_t file_count,
                               std::size_t file_index, std::size_t iteration,
                               const MatrixFp& messages) {
  const std::size_t n = params.storage_code().length();
  const std::size_t b = params.rows_per_file();
  const std::size_t kd = params.retrieval_code().dimension();
  const FieldSpec& f = params.storage_code().field();
  if (file_count == 0) throw InvalidArgument("queries: file count must be positive");
  if (file_index >= file_count) throw IndexOutOfRange("queries: file index out of range");
  if (iteration >= params.iterations()) throw IndexOutOfRange("queries: iteration out of range");
  if (messages.rows() != file_count * b || messages.cols() != kd) {
    throw DimensionMismatch("queries: messages must be (m*b) x dim(D)");
  }
  const MatrixFp codewords = messages * params.retrieval_code().generator();
  MatrixFp queries(f, n, b * file_count);
  for (std::size_t l = 0; l < file_count; ++l) {
    for (std::size_t a = 0; a < b; ++a) {
      for (std::size_t jj = 0; jj < n; ++jj) {
        queries.set(jj, l * b + a, codewords.at(l * b + a, jj));
      }
    }
  }
  // add the unit probe e_{b*i + a} at the servers targeted for row a
  for (std::size_t a = 0; a < b; ++a) {
    for (std::size_t jj : params.index_sets()[iteration][a]) {
      const std::size_t col = file_index * b + a;
      queries.set(jj, col, f.add(queries.at(jj, col), 1));
    }
  }
  return {iteration, std::move(queries), codewords, messages};
}

QuerySet make_queries(const SchemeParams& params, std::size_t file_count,
                      std::size_t file_index, std::size_t iteration, Rng& rng,
                      QueryPolicy policy) {
  const std::size_t b = params.rows_per_file();
  const std::size_t kd = params.retrieval_code().dimension();
  const FieldSpec& f = params.storage_code().field();
  MatrixFp messages(f, file_count * b, kd);
  if (policy == QueryPolicy::uniform) {
    for (std::size_t r = 0; r < messages.rows(); ++r)
      for (std::size_t cc = 0; cc < kd; ++cc)
        messages.set(r, cc, rng.next_below(f.modulus()));
  } else {
    // broken-by-design: every draw is the same fixed codeword
    for (std::size_t r = 0; r < messages.rows(); ++r) messages.set(r, 0, 1);
  }
  return queries_from_messages(params, file_count, file_index, iteration, messages);
}

MatrixFp reconstruct(const SchemeParams& params, const RetrievalTranscript& transcript) {
  const std::size_t n = params.storage_code().length();
  const std::size_t k = params.storage_code().dimension();
  const std::size_t b = params.rows_per_file();
  const std::size_t s = params.iterations();
  const FieldSpec& f = params.storage_code().field();
  if (transcript.iterations.size() != s) {
    throw InvalidArgument("reconstruct: transcript does not cover all iterations");
  }
  // decoded[a] collects (server, y^i_j(a)) pairs across iterations
  std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> decoded(b);
  for (std::size_t u = 0; u < s; ++u) {
    const MatrixFp& r = transcript.iterations[u].responses;
    if (r.rows() != n || r.cols() != 1) {
      throw DimensionMismatch("reconstruct: response vector must be n x 1");
    }
    // S r = S ytilde; the c targeted symbols are recoverable because every
    // c columns of S are linearly independent
    const MatrixFp sr = params.star_dual_generator() * r;
    std::vector<std::pair<std::size_t, std::size_t>> targets;  // (server, row)
    for (std::size_t a = 0; a < b; ++a) {
      for (std::size_t jj : params.index_sets()[u][a]) targets.emplace_back(jj, a);
    }
    std::sort(targets.begin(), targets.end());
    std::vector<std::size_t> cols(targets.size());
    for (std::size_t t = 0; t < targets.size(); ++t) cols[t] = targets[t].first;
    MatrixFp symbols(f, targets.size(), 1);
    try {
      symbols = solve(params.star_dual_generator().select_columns(cols), sr);
    } catch (const Error&) {
      throw SingularSystem("reconstruct: responses violate the star-product structure");
    }
    for (std::size_t t = 0; t < targets.size(); ++t) {
      decoded[targets[t].second].emplace_back(targets[t].first, symbols.at(t, 0));
    }
  }
  // per row a we now hold k encoded symbols on an information set of C
  MatrixFp file(f, b, k);
  for (std::size_t a = 0; a < b; ++a) {
    auto& entries = decoded[a];
    std::sort(entries.begin(), entries.end());
    if (entries.size() != k) {
      throw NotInformationSet("reconstruct: row coverage is incomplete");
    }
    std::vector<std::size_t> cols(k);
    MatrixFp y(f, k, 1);
    for (std::size_t t = 0; t < k; ++t) {
      cols[t] = entries[t].first;
      y.set(t, 0, entries[t].second);
    }
    MatrixFp file_row(f, k, 1);
    try {
      file_row = solve(params.storage_code().generator().select_columns(cols).transpose(), y);
    } catch (const Error&) {
      throw NotInformationSet("reconstruct: accumulated columns are not an information set");
    }
    for (std::size_t t = 0; t < k; ++t) file.set(a, t, file_row.at(t, 0));
  }
  return file;
}

Rational make_rational(long long num, long long den) {
  if (den == 0) throw InvalidArgument("make_rational: zero denominator");
  long long g = std::gcd(num, den);
  if (g == 0) g = 1;
  num /= g;
  den /= g;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return {num, den};
}

Rational achieved_rate(const SchemeParams& params) {
  const auto num = static_cast<long long>(params.rows_per_file() *
                                          params.storage_code().dimension());
  const auto den = static_cast<long long>(params.storage_code().length() *
                                          params.iterations());
  return make_rational(num, den);  // equals c/n
}

std::pair<MatrixFp, RetrievalTranscript> run_retrieval(std::span<const ServerNode> nodes,
                                                       const SchemeParams& params,
                                                       std::size_t file_index,
                                                       std::uint64_t seed, QueryPolicy policy) {
  const std::size_t n = params.storage_code().length();
  const std::size_t b = params.rows_per_file();
  if (nodes.size() != n) throw DimensionMismatch("run_retrieval: need one node per server");
  for (std::size_t jj = 0; jj < n; ++jj) {
    if (nodes[jj].index != jj) {
      throw InvalidArgument("run_retrieval: nodes must be ordered by server index");
    }
  }
  const std::size_t bm = nodes.front().column.rows();
  if (bm % b != 0) {
    throw DimensionMismatch("run_retrieval: stored columns are not a multiple of b rows");
  }
  const std::size_t m = bm / b;
  Rng rng(seed);
  RetrievalTranscript transcript;
  transcript.file_index = file_index;
  transcript.seed = seed;
  for (std::size_t u = 0; u < params.iterations(); ++u) {
    QuerySet qs = make_queries(params, m, file_index, u, rng, policy);
    MatrixFp responses(params.storage_code().field(), n, 1);
    for (std::size_t jj = 0; jj < n; ++jj) {
      responses.set(jj, 0, respond(nodes[jj], qs.queries.row(jj)).value());
    }
    transcript.iterations.push_back({std::move(qs), std::move(responses)});
  }
  MatrixFp file = reconstruct(params, transcript);
  return {std::move(file), std::move(transcript)};
}

}  // namespace starpir
