#include "starpir/grs.hpp"

#include <algorithm>

namespace starpir {

GrsSpec::GrsSpec(const FieldSpec& field, std::vector<std::uint64_t> alpha,
                 std::vector<std::uint64_t> v, std::size_t k)
    : field_(field), alpha_(std::move(alpha)), v_(std::move(v)), k_(k) {
  const std::size_t n = alpha_.size();
  if (n == 0) throw InvalidArgument("GrsSpec: empty evaluation vector");
  if (v_.size() != n) throw DimensionMismatch("GrsSpec: alpha and v lengths differ");
  if (k_ == 0 || k_ > n) throw InvalidArgument("GrsSpec: dimension must satisfy 1 <= k <= n");
  if (n > field_.modulus()) {
    throw InvalidArgument("GrsSpec: length exceeds field size (alpha cannot be distinct)");
  }
  for (auto& a : alpha_) a = field_.reduce(a);
  for (auto& m : v_) {
    m = field_.reduce(m);
    if (m == 0) throw InvalidArgument("GrsSpec: multipliers must be nonzero");
  }
  std::vector<std::uint64_t> sorted = alpha_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("GrsSpec: evaluation points must be distinct");
  }
}

GrsSpec GrsSpec::with_defaults(const FieldSpec& field, std::size_t n, std::size_t k) {
  std::vector<std::uint64_t> alpha(n);
  for (std::size_t i = 0; i < n; ++i) alpha[i] = i;
  return GrsSpec(field, std::move(alpha), std::vector<std::uint64_t>(n, 1), k);
}

MatrixFp canonical_generator(const GrsSpec& spec) {
  const FieldSpec& f = spec.field();
  const std::size_t n = spec.length();
  const std::size_t k = spec.dimension();
  MatrixFp gen(f, k, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t power = 1;
    for (std::size_t r = 0; r < k; ++r) {
      gen.set(r, j, f.mul(power, spec.multipliers()[j]));
      power = f.mul(power, spec.alpha()[j]);
    }
  }
  return gen;
}

MatrixFp systematic_generator(const GrsSpec& spec) {
  const FieldSpec& f = spec.field();
  const std::size_t n = spec.length();
  const std::size_t k = spec.dimension();
  const auto& alpha = spec.alpha();
  const auto& v = spec.multipliers();
  MatrixFp gen(f, k, n);
  for (std::size_t i = 0; i < k; ++i) {
    // f_i(x) = v_i^{-1} * prod_{t != i} (x - alpha_t) / (alpha_i - alpha_t)
    const std::uint64_t vi_inv = f.inv(v[i]);
    for (std::size_t j = 0; j < n; ++j) {
      std::uint64_t val = vi_inv;
      for (std::size_t t = 0; t < k; ++t) {
        if (t == i) continue;
        val = f.mul(val, f.sub(alpha[j], alpha[t]));
        val = f.mul(val, f.inv(f.sub(alpha[i], alpha[t])));
      }
      gen.set(i, j, f.mul(val, v[j]));
    }
  }
  return gen;
}

GrsSpec grs_dual(const GrsSpec& spec) {
  const FieldSpec& f = spec.field();
  const std::size_t n = spec.length();
  const std::size_t k = spec.dimension();
  if (k == n) throw FullDimension("grs_dual: full-dimension code has a trivial dual");
  const auto& alpha = spec.alpha();
  std::vector<std::uint64_t> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t prod = spec.multipliers()[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      prod = f.mul(prod, f.sub(alpha[i], alpha[j]));
    }
    u[i] = f.inv(prod);
  }
  return GrsSpec(f, alpha, std::move(u), n - k);
}

GrsSpec grs_star(const GrsSpec& a, const GrsSpec& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("grs_star: fields differ");
  if (a.alpha() != b.alpha()) {
    throw InvalidArgument("grs_star: specs must share the evaluation vector alpha");
  }
  const std::size_t n = a.length();
  const FieldSpec& f = a.field();
  std::vector<std::uint64_t> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = f.mul(a.multipliers()[i], b.multipliers()[i]);
  const std::size_t k = std::min(a.dimension() + b.dimension() - 1, n);
  return GrsSpec(f, a.alpha(), std::move(w), k);
}

LinearCode as_code(const GrsSpec& spec, GeneratorForm form) {
  MatrixFp gen = form == GeneratorForm::canonical ? canonical_generator(spec)
                                                  : systematic_generator(spec);
  return LinearCode::from_generator_with_distance(gen, spec.length() - spec.dimension() + 1);
}

}  // namespace starpir
