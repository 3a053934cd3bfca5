#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "sigsym/matrix.hpp"

namespace sigsym {

/// Seeded generator used by all sampling code.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for (seed, tag, index); used so that sampled cases
  /// do not depend on evaluation order.
  static Rng stream(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : tag) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::mt19937_64 e(seq);
    return Rng(e());
  }

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
  bool chance(double p) { return std::bernoulli_distribution(p)(engine_); }
  Subset subset(std::size_t n) { return Subset(static_cast<std::uint32_t>(below(std::size_t{1} << n))); }

  Elem element(const Field& f) { return Elem{static_cast<std::uint16_t>(below(static_cast<std::size_t>(f.order())))}; }
  Elem unit(const Field& f) { return Elem{static_cast<std::uint16_t>(1 + below(static_cast<std::size_t>(f.order()) - 1))}; }

  /// Zero with probability `zero_bias`, otherwise uniform over the field.
  Elem sparse_element(const Field& f, double zero_bias) { return chance(zero_bias) ? f.zero() : element(f); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Random matrix satisfying eps(x) m_xy = eps(y) sigma(m_yx).
inline LabeledMatrix random_sigma_eps_matrix(const SesquiMorphism& sigma, const EpsilonSign& eps, std::size_t n, Rng& rng,
                                             double zero_bias = 0.3) {
  const Field& f = sigma.field();
  LabeledMatrix m(f, LabeledMatrix::default_labels(n));
  std::vector<Elem> fixed;
  for (Elem x : f.elements())
    if (sigma(x) == x) fixed.push_back(x);
  for (std::size_t x = 0; x < n; ++x) {
    m(x, x) = rng.chance(zero_bias) ? f.zero() : fixed[rng.below(fixed.size())];
    for (std::size_t y = x + 1; y < n; ++y) {
      const Elem v = rng.sparse_element(f, zero_bias);
      m(x, y) = v;
      m(y, x) = sigma(f.mul(f.mul(eps.value(f, x), eps.value(f, y)), v));
    }
  }
  return m;
}

inline EpsilonSign random_epsilon(const Field& f, std::size_t n, Rng& rng) {
  if (f.characteristic() == 2) return {};
  return {rng.subset(n)};
}

/// A sigma-compatible scaling pair with uniformly random p.
inline ScalingPair random_scaling_pair(const SesquiMorphism& sigma, std::size_t n, Rng& rng) {
  auto pair = ScalingPair::identity(sigma.field(), n);
  for (std::size_t i = 0; i < n; ++i) {
    pair.p[i] = rng.unit(sigma.field());
    pair.q[i] = ScalingPair::partner(sigma, pair.p[i]);
  }
  return pair;
}

}  // namespace sigsym
