#include "hom/measure.hpp"
#include "hom/random.hpp"

#include <catch_amalgamated.hpp>

using hom::Complex;
using hom::GroupElement;
using hom::Measure;
using hom::Polynomial;
using Q = hom::Rational;
using GQ = GroupElement<Q>;

namespace {

GQ vec(std::initializer_list<int> v) {
  std::vector<Q> c;
  for (int x : v) c.emplace_back(x);
  return GQ(std::move(c));
}

Measure<Q> linear_power(std::vector<Q> lambda, unsigned d) {
  return Measure<Q>::polynomial(Polynomial<Q>::linear(lambda).pow(d));
}

}  // namespace

TEST_CASE("eval examples", "[measure]") {
  const double r = 1.0 / std::sqrt(2.0);
  const auto q = hom::quantum_measure_from_amplitudes<Complex>({{r, 0}, {r, 0}});
  // |z1 + z2|^2 = (2/sqrt2)^2
  CHECK(std::abs(q(GroupElement<Complex>(std::vector<Complex>{1.0, 1.0})) - 2.0) < 1e-12);
  CHECK(q(GroupElement<Complex>::zero(2)) == Complex(0, 0));

  const auto square = linear_power({Q(1)}, 2);
  CHECK(square(vec({3})) == 9);
  CHECK(square(GQ::zero(1)) == 0);
}

TEST_CASE("table measures miss unsampled points", "[measure]") {
  const auto mu = Measure<Q>::table(2, {{vec({1, 0}), Q(5)}, {vec({0, 1}), Q(7)}});
  CHECK(mu(vec({0, 1})) == 7);
  CHECK(mu.covers(vec({1, 0})));
  CHECK_FALSE(mu.covers(vec({1, 1})));
  CHECK_THROWS_AS(mu(vec({1, 1})), hom::UnsampledPoint);
  CHECK_THROWS_AS(mu(vec({1, 1, 1})), hom::DimensionMismatch);
}

TEST_CASE("check_measure_identity examples", "[measure]") {
  std::mt19937_64 rng(11);
  const auto additive = linear_power({Q(2), Q(-1, 3)}, 1);
  const auto quantum = hom::quantum_measure_from_amplitudes<Q>({Q(1, 2), Q(-3), Q(2, 7)});
  for (int t = 0; t < 50; ++t) {
    std::vector<GQ> ab{hom::random_rational_element(rng, 2), hom::random_rational_element(rng, 2)};
    CHECK(hom::check_measure_identity(additive, 1, ab));
    std::vector<GQ> abc;
    for (int i = 0; i < 3; ++i) abc.push_back(hom::random_rational_element(rng, 3));
    CHECK(hom::check_measure_identity(quantum, 2, abc));
  }
  // lambda(a)=1, lambda(b)=1, lambda(c)=2 with mu = lambda^3: I_3 = 12 != 0.
  const auto cube = linear_power({Q(1), Q(2)}, 3);
  CHECK_FALSE(hom::check_measure_identity(cube, 2, std::vector<GQ>{vec({1, 0}), vec({1, 0}), vec({0, 1})}));
  CHECK_THROWS_AS(hom::check_measure_identity(cube, 2, std::vector<GQ>{vec({1, 0})}), hom::InvalidArgument);
  CHECK_THROWS_AS(hom::check_measure_identity(cube, 0, std::vector<GQ>{vec({1, 0})}), hom::InvalidArgument);
}

TEST_CASE("approximate quantum measures satisfy the order-2 identity within tolerance", "[measure]") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto mu = hom::quantum_measure_from_amplitudes(hom::random_amplitudes(rng, 4));
    std::vector<GroupElement<Complex>> args;
    for (int i = 0; i < 3; ++i) args.push_back(hom::random_element<Complex>(rng, 4));
    CHECK(hom::check_measure_identity(mu, 2, args, hom::Tolerance{1e-9}));
  }
}

TEST_CASE("parity_split examples", "[measure]") {
  const auto lambda = linear_power({Q(1)}, 1);
  const auto square = linear_power({Q(1)}, 2);

  const auto s1 = hom::parity_split(square);
  const auto s2 = hom::parity_split(lambda);
  const auto s3 = hom::parity_split(lambda + square);
  const auto a = vec({2});
  CHECK(s1.even(a) == square(a));
  CHECK(s1.odd(a) == 0);
  CHECK(s2.even(a) == 0);
  CHECK(s2.odd(a) == lambda(a));
  // (mu(a)+mu(-a))/2 = (6+2)/2, (mu(a)-mu(-a))/2 = (6-2)/2
  CHECK(s3.even(a) == 4);
  CHECK(s3.odd(a) == 2);
}

TEST_CASE("parity_split invariants on black-box measures", "[measure]") {
  std::mt19937_64 rng(5);
  const auto p = hom::random_polynomial(rng, 3, 2, false, 6);
  const auto mu = Measure<Q>::function(3, [p](const GQ& g) { return p(g); });
  const auto split = hom::parity_split(mu);
  for (int t = 0; t < 100; ++t) {
    const auto a = hom::random_rational_element(rng, 3);
    const auto b = hom::random_rational_element(rng, 3);
    CHECK(split.even(a) == split.even(-a));
    CHECK(split.odd(a) == -split.odd(-a));
    CHECK(split.even(a) + split.odd(a) == mu(a));
    CHECK(split.odd(a + b) == split.odd(a) + split.odd(b));
  }
}

TEST_CASE("bimodule_action examples", "[measure]") {
  const auto mu = linear_power({Q(1), Q(1), Q(1)}, 2);
  const auto ones = vec({1, 1, 1});
  const auto a = vec({1, 1, 1});
  CHECK(hom::bimodule_action(ones, mu, ones)(a) == mu(a));
  // mu(a * chi_{1,2}) = (1+1)^2
  CHECK(hom::bimodule_action(vec({1, 1, 0}), mu, ones)(a) == 4);
  CHECK_THROWS_AS(hom::bimodule_action(vec({1, 1}), mu, ones), hom::DimensionMismatch);
}

TEST_CASE("bimodule action preserves M_n for every representation", "[measure]") {
  std::mt19937_64 rng(8);
  const auto x = hom::random_rational_element(rng, 3);
  const auto y = hom::random_rational_element(rng, 3);
  const auto poly = Measure<Q>::polynomial(hom::random_polynomial(rng, 3, 3));
  const auto quantum = hom::quantum_measure_from_amplitudes<Q>({Q(1), Q(-2, 3), Q(5)});
  const auto closure = Measure<Q>::function(3, [poly](const GQ& g) { return poly(g); });
  for (const auto& [mu, n] : {std::pair{poly, 3u}, std::pair{quantum, 2u}, std::pair{closure, 3u}}) {
    const auto acted = hom::bimodule_action(x, mu, y);
    for (int t = 0; t < 20; ++t) {
      std::vector<GQ> args;
      for (unsigned i = 0; i <= n; ++i) args.push_back(hom::random_rational_element(rng, 3));
      CHECK(hom::check_measure_identity(acted, n, args));
      const auto g = hom::random_rational_element(rng, 3);
      CHECK(acted(g) == mu(y.pointwise(g).pointwise(x)));
    }
  }
}

TEST_CASE("quantum_measure_from_amplitudes examples", "[measure]") {
  const double r = 1.0 / std::sqrt(2.0);
  const auto e1 = GroupElement<Complex>::basis(2, 0);
  const auto e2 = GroupElement<Complex>::basis(2, 1);
  const auto same = hom::quantum_measure_from_amplitudes<Complex>({{r, 0}, {r, 0}});
  CHECK(std::abs(same(e1) - 0.5) < 1e-12);
  CHECK(std::abs(same(e2) - 0.5) < 1e-12);
  CHECK(std::abs(same(e1 + e2) - same(e1) - same(e2) - 1.0) < 1e-12);
  const auto orthogonal = hom::quantum_measure_from_amplitudes<Complex>({{r, 0}, {0, r}});
  CHECK(std::abs(orthogonal(e1 + e2) - orthogonal(e1) - orthogonal(e2)) < 1e-12);

  // Exact Gaussian version: z = (1/2, i/2) gives I_2(chi_1, chi_2) = 0 exactly.
  using G = hom::GaussianRational;
  const auto gq = hom::quantum_measure_from_amplitudes<G>({G(Q(1, 2)), G(Q(0), Q(1, 2))});
  const auto g1 = GroupElement<G>::basis(2, 0);
  const auto g2 = GroupElement<G>::basis(2, 1);
  CHECK(gq(g1 + g2) - gq(g1) - gq(g2) == G(0));
  CHECK(gq(g1) == G(Q(1, 4)));
}

TEST_CASE("quantum measures are real and non-negative on subsets", "[measure]") {
  std::mt19937_64 rng(21);
  const auto mu = hom::quantum_measure_from_amplitudes(hom::random_amplitudes(rng, 5));
  for (const auto& s : hom::SubsetMask::all(5)) {
    const Complex v = mu(hom::characteristic_function<Complex>(s));
    CHECK(v.imag() == 0.0);
    CHECK(v.real() >= 0.0);
  }
}

TEST_CASE("rational quantum measures have a quadratic polynomial form", "[measure]") {
  const auto mu = hom::quantum_measure_from_amplitudes<Q>({Q(1, 2), Q(3)});
  const auto p = mu.polynomial_form();
  REQUIRE(p);
  CHECK(p->degree() == 2);
  CHECK((*p)(vec({2, -1})) == mu(vec({2, -1})));
  // No polynomial form over the Gaussian field, where conjugation enters.
  const auto g = hom::quantum_measure_from_amplitudes<hom::GaussianRational>({Q(1), Q(2)});
  CHECK_FALSE(g.polynomial_form());
}
