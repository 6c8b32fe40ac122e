#include "starpir/code.hpp"

#include <algorithm>

#include "starpir/combinatorics.hpp"

namespace starpir {

namespace {
constexpr std::uint64_t kDistanceBudget = std::uint64_t{1} << 22;  // codeword enumeration
constexpr std::uint64_t kSubsetBudget = 1'000'000;                 // k-subset enumeration
}  // namespace

LinearCode::LinearCode(MatrixFp gen, bool was_reduced, std::size_t known_distance)
    : gen_(std::move(gen)),
      was_reduced_(was_reduced),
      distance_cache_(std::make_shared<std::atomic<std::size_t>>(known_distance)) {}

LinearCode LinearCode::from_generator(const MatrixFp& gen) {
  if (gen.rows() == 0 || gen.is_zero()) {
    throw ZeroMatrix("LinearCode: generator must be nonzero");
  }
  auto [reduced, pivots] = rref(gen);
  const std::size_t k = pivots.size();
  if (k == gen.rows()) return LinearCode(gen, false, 0);
  // dependent rows: keep the nonzero RREF rows as the basis
  MatrixFp basis(gen.field(), k, gen.cols());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < gen.cols(); ++j) basis.set(i, j, reduced.at(i, j));
  return LinearCode(std::move(basis), true, 0);
}

LinearCode LinearCode::from_generator_with_distance(const MatrixFp& gen, std::size_t distance) {
  LinearCode c = from_generator(gen);
  if (distance == 0 || distance > c.length()) {
    throw InvalidArgument("LinearCode: asserted distance out of range");
  }
  c.distance_cache_->store(distance, std::memory_order_relaxed);
  return c;
}

LinearCode LinearCode::repetition(std::size_t n, const FieldSpec& field) {
  if (n == 0) throw InvalidArgument("repetition: length must be positive");
  MatrixFp gen(field, 1, n);
  for (std::size_t j = 0; j < n; ++j) gen.set(0, j, 1);
  return LinearCode(std::move(gen), false, n);
}

std::optional<std::size_t> LinearCode::cached_min_distance() const {
  const std::size_t d = distance_cache_->load(std::memory_order_relaxed);
  if (d == 0) return std::nullopt;
  return d;
}

std::size_t LinearCode::min_distance() const {
  if (auto d = cached_min_distance()) return *d;
  const std::size_t n = length();
  const std::size_t k = dimension();
  const std::uint64_t p = field().modulus();
  if (pow_capped(p, k, kDistanceBudget) > kDistanceBudget) {
    throw BudgetExceeded("min_distance: p^k exceeds the enumeration budget");
  }
  // Enumerate one message per projective point: first nonzero entry fixed
  // to 1. Scaling a codeword does not change its weight.
  std::size_t best = n;
  std::vector<std::uint64_t> msg(k, 0);
  for (std::size_t lead = 0; lead < k && best > 1; ++lead) {
    std::fill(msg.begin(), msg.end(), 0);
    msg[lead] = 1;
    for (;;) {
      std::size_t weight = 0;
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t i = lead; i < k; ++i) acc += msg[i] * gen_.at(i, j);
        if (acc % p != 0) ++weight;
      }
      best = std::min(best, weight);
      if (best == 1) break;
      // odometer over positions lead+1 .. k-1
      std::size_t pos = k;
      bool done = true;
      while (pos > lead + 1) {
        --pos;
        if (++msg[pos] < p) {
          done = false;
          break;
        }
        msg[pos] = 0;
      }
      if (done) break;
    }
  }
  distance_cache_->store(best, std::memory_order_relaxed);
  return best;
}

LinearCode dual(const LinearCode& c) {
  if (c.dimension() == c.length()) {
    throw TrivialDual("dual: full-dimension code has a trivial dual");
  }
  return LinearCode::from_generator(null_space(c.generator()));
}

LinearCode star_product(const LinearCode& c, const LinearCode& d) {
  if (!(c.field() == d.field())) throw FieldMismatch("star_product: fields differ");
  if (c.length() != d.length()) throw DimensionMismatch("star_product: lengths differ");
  const std::size_t n = c.length();
  MatrixFp products(c.field(), c.dimension() * d.dimension(), n);
  std::size_t r = 0;
  for (std::size_t i = 0; i < c.dimension(); ++i) {
    for (std::size_t j = 0; j < d.dimension(); ++j, ++r) {
      for (std::size_t t = 0; t < n; ++t) {
        products.set(r, t, c.field().mul(c.generator().at(i, t), d.generator().at(j, t)));
      }
    }
  }
  return LinearCode::from_generator(products);
}

bool is_information_set(const LinearCode& c, std::span<const std::size_t> cols) {
  if (cols.size() != c.dimension()) {
    throw InvalidArgument("is_information_set: need exactly k column indices");
  }
  std::vector<std::size_t> sorted(cols.begin(), cols.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("is_information_set: duplicate column index");
  }
  if (!sorted.empty() && sorted.back() >= c.length()) {
    throw IndexOutOfRange("is_information_set: column index out of range");
  }
  return rank(c.generator().select_columns(sorted)) == c.dimension();
}

bool is_mds(const LinearCode& c) {
  const std::size_t n = c.length();
  const std::size_t k = c.dimension();
  if (k == n) return true;
  if (binomial_capped(n, k, kSubsetBudget) > kSubsetBudget) {
    throw BudgetExceeded("is_mds: C(n,k) exceeds the subset budget");
  }
  return for_each_combination(n, k, [&](const std::vector<std::size_t>& cols) {
    return rank(c.generator().select_columns(cols)) == k;
  });
}

std::vector<std::size_t> support(const LinearCode& c) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < c.length(); ++j) {
    for (std::size_t i = 0; i < c.dimension(); ++i) {
      if (c.generator().at(i, j) != 0) {
        out.push_back(j);
        break;
      }
    }
  }
  return out;
}

bool same_code(const LinearCode& a, const LinearCode& b) {
  if (!(a.field() == b.field())) return false;
  if (a.length() != b.length() || a.dimension() != b.dimension()) return false;
  return rref(a.generator()).matrix == rref(b.generator()).matrix;
}

bool contains_code(const LinearCode& outer, const LinearCode& inner) {
  if (!(outer.field() == inner.field()) || outer.length() != inner.length()) return false;
  return rank(MatrixFp::vstack(outer.generator(), inner.generator())) == outer.dimension();
}

}  // namespace starpir
