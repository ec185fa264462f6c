#pragma once

// Seeded generators for property checks.

#include "hom/polarization.hpp"

namespace hom {

/// Random exact element with rational coefficients.
inline GroupElement<Rational> random_rational_element(std::mt19937_64& rng, std::size_t m) {
  std::vector<Rational> c;
  for (std::size_t i = 0; i < m; ++i) c.push_back(random_rational(rng));
  return GroupElement<Rational>(std::move(c));
}

inline Monomial random_monomial(std::mt19937_64& rng, std::size_t m, unsigned degree) {
  Monomial mono(m, 0);
  std::uniform_int_distribution<std::size_t> var(0, m - 1);
  for (unsigned i = 0; i < degree; ++i) ++mono[var(rng)];
  return mono;
}

/// Random polynomial with zero constant term and total degree at most
/// max_degree; exactly max_degree when `exact_degree` is set.
inline Polynomial<Rational> random_polynomial(std::mt19937_64& rng, std::size_t m, unsigned max_degree,
                                              bool exact_degree = false, std::size_t terms = 5) {
  Polynomial<Rational> p(m);
  if (max_degree == 0) return p;
  std::uniform_int_distribution<unsigned> deg(1, max_degree);
  auto nonzero = [&] {
    Rational r = random_rational(rng);
    return r == 0 ? Rational(1) : r;
  };
  for (std::size_t t = 0; t < terms; ++t) p.add_term(random_monomial(rng, m, deg(rng)), nonzero());
  if (exact_degree) {
    while (p.degree() != max_degree) p.add_term(random_monomial(rng, m, max_degree), nonzero());
  }
  return p;
}

inline SymmetricForm<Rational> random_form(std::mt19937_64& rng, unsigned order, std::size_t m) {
  SymmetricForm<Rational> phi(order, m);
  for (const auto& [idx, unused] : phi.table()) phi.set(idx, random_rational(rng));
  return phi;
}

/// Random complex amplitudes of unit norm.
inline std::vector<Complex> random_amplitudes(std::mt19937_64& rng, std::size_t k) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> z;
  for (std::size_t i = 0; i < k; ++i) z.emplace_back(g(rng), g(rng));
  return normalized(std::move(z));
}

/// Table measure holding random rational values at every subset sum of
/// `args`, including the identity (pinned to 0 when zero_at_identity).
inline Measure<Rational> random_table_over(std::mt19937_64& rng, std::span<const GroupElement<Rational>> args,
                                           bool zero_at_identity = true) {
  const std::size_t m = common_dimension(args);
  std::vector<Measure<Rational>::TableEntry> entries;
  for (const auto& s : all_subset_sums(args, m)) {
    const bool seen = std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.point == s; });
    if (seen) continue;
    entries.push_back({s, zero_at_identity && s.is_zero() ? Rational(0) : random_rational(rng, 50, 7)});
  }
  return Measure<Rational>::table(m, std::move(entries));
}

}  // namespace hom
