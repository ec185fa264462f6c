#pragma once

// Deterministic sample families for the sample-based probes (order,
// primitivity, decomposition membership).

#include "hom/core.hpp"

#include <random>

namespace hom {

/// Non-decreasing index tuples (multisets) of the given size over m indices,
/// in lexicographic order.
inline std::vector<std::vector<std::size_t>> multiset_tuples(std::size_t m, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(size, 0);
  if (m == 0) return out;
  while (true) {
    out.push_back(cur);
    std::size_t pos = size;
    while (pos > 0 && cur[pos - 1] == m - 1) --pos;
    if (pos == 0) break;
    const std::size_t v = cur[pos - 1] + 1;
    for (std::size_t i = pos - 1; i < size; ++i) cur[i] = v;
  }
  return out;
}

/// Small random integer coefficients in [-range, range].
template <Scalar S>
GroupElement<S> random_element(std::mt19937_64& rng, std::size_t m, int range = 3) {
  std::uniform_int_distribution<int> dist(-range, range);
  std::vector<S> c;
  c.reserve(m);
  for (std::size_t i = 0; i < m; ++i) c.push_back(from_int<S>(dist(rng)));
  return GroupElement<S>(std::move(c));
}

/// Random rational p/q with |p| <= max_num, 1 <= q <= max_den.
inline Rational random_rational(std::mt19937_64& rng, int max_num = 9, int max_den = 5) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  const int p = num(rng);
  const int q = den(rng);
  return Rational(p, q);
}

/// Tuple family: every basis multiset tuple (when there are at most
/// `basis_cap` of them) followed by `random_count` seeded random tuples.
/// The random part depends only on (seed, arity), so families are reproducible.
template <Scalar S>
class TupleSampler {
 public:
  explicit TupleSampler(std::size_t m, std::uint64_t seed = 42, std::size_t random_count = 32, int range = 3,
                        std::size_t basis_cap = 4096)
      : m_(m), seed_(seed), random_count_(random_count), range_(range), basis_cap_(basis_cap) {}

  std::size_t dimension() const { return m_; }

  std::vector<std::vector<GroupElement<S>>> tuples(std::size_t arity) const {
    std::vector<std::vector<GroupElement<S>>> out;
    if (binomial(m_ + arity - 1, arity) <= basis_cap_) {
      for (const auto& idx : multiset_tuples(m_, arity)) {
        std::vector<GroupElement<S>> t;
        for (auto i : idx) t.push_back(GroupElement<S>::basis(m_, i));
        out.push_back(std::move(t));
      }
    }
    std::mt19937_64 rng(seed_ ^ (0x9e3779b97f4a7c15ULL * (arity + 1)));
    for (std::size_t r = 0; r < random_count_; ++r) {
      std::vector<GroupElement<S>> t;
      for (std::size_t j = 0; j < arity; ++j) t.push_back(random_element<S>(rng, m_, range_));
      out.push_back(std::move(t));
    }
    return out;
  }

 private:
  std::size_t m_;
  std::uint64_t seed_;
  std::size_t random_count_;
  int range_;
  std::size_t basis_cap_;
};

}  // namespace hom
