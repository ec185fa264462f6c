#include "hom/polarization.hpp"
#include "hom/random.hpp"

#include <catch_amalgamated.hpp>

using hom::GroupElement;
using hom::Measure;
using hom::Polynomial;
using hom::SymmetricForm;
using Q = hom::Rational;
using GQ = GroupElement<Q>;

namespace {

GQ vec(std::initializer_list<int> v) {
  std::vector<Q> c;
  for (int x : v) c.emplace_back(x);
  return GQ(std::move(c));
}

Q dot(const std::vector<Q>& l, const GQ& g) {
  Q s(0);
  for (std::size_t i = 0; i < l.size(); ++i) s += l[i] * g[i];
  return s;
}

// Diagonal by brute-force expansion over ordered index tuples.
Q diagonal_oracle(const SymmetricForm<Q>& phi, const GQ& x) {
  const std::size_t m = phi.dimension();
  const unsigned n = phi.order();
  std::vector<std::size_t> idx(n, 0);
  Q total(0);
  while (true) {
    Q term(1);
    for (auto i : idx) term *= x[i];
    total += term * phi.at(idx);
    std::size_t p = 0;
    while (p < n && ++idx[p] == m) idx[p++] = 0;
    if (p == n) break;
  }
  return total;
}

}  // namespace

TEST_CASE("polarize examples", "[polarization]") {
  const auto square = Measure<Q>::polynomial(Polynomial<Q>::linear(std::vector<Q>{Q(1), Q(2)}).pow(2));
  CHECK(hom::polarize(square, 2, std::vector<GQ>{vec({1, 0}), vec({1, 0})}) == 1);
  const auto a = vec({1, 0});
  const auto b = vec({0, 1});
  CHECK(hom::polarize(square, 2, std::vector<GQ>{a, b}) == 2);
  CHECK((square(a + b) - square(a - b)) / 4 == 2);

  const auto cube = Measure<Q>::polynomial(Polynomial<Q>::linear(std::vector<Q>{Q(1), Q(2)}).pow(3));
  const std::vector<GQ> args{a, a, b};
  CHECK(hom::polarize(cube, 3, args) == 2);
  CHECK(hom::interference(cube, args) == 6 * hom::polarize(cube, 3, args));
}

TEST_CASE("polarization of a linear power is the product of linear values", "[polarization]") {
  std::mt19937_64 rng(10);
  for (unsigned n = 1; n <= 4; ++n) {
    std::vector<Q> l;
    for (int i = 0; i < 3; ++i) l.push_back(hom::random_rational(rng));
    const auto mu = Measure<Q>::polynomial(Polynomial<Q>::linear(l).pow(n));
    for (int t = 0; t < 10; ++t) {
      std::vector<GQ> args;
      Q product(1);
      for (unsigned i = 0; i < n; ++i) {
        args.push_back(hom::random_rational_element(rng, 3));
        product *= dot(l, args.back());
      }
      REQUIRE(hom::polarize(mu, n, args) == product);
    }
  }
}

TEST_CASE("polarize discards lower-degree parts", "[polarization]") {
  std::mt19937_64 rng(11);
  const auto top = hom::random_polynomial(rng, 2, 3, true);
  const auto mu = Measure<Q>::polynomial(top.homogeneous_part(3));
  const auto mixed = Measure<Q>::polynomial(top.homogeneous_part(3) + hom::random_polynomial(rng, 2, 2));
  for (int t = 0; t < 20; ++t) {
    std::vector<GQ> args;
    for (int i = 0; i < 3; ++i) args.push_back(hom::random_rational_element(rng, 2));
    CHECK(hom::polarize(mu, 3, args) == hom::polarize(mixed, 3, args));
  }
}

TEST_CASE("polarize validates its arguments", "[polarization]") {
  const auto mu = Measure<Q>::polynomial(Polynomial<Q>::linear(std::vector<Q>{Q(1)}));
  CHECK_THROWS_AS(hom::polarize(mu, 2, std::vector<GQ>{vec({1})}), hom::InvalidArgument);
  CHECK_THROWS_AS(hom::polarize(mu, 0, std::vector<GQ>{}), hom::InvalidArgument);
}

TEST_CASE("section examples", "[polarization]") {
  const SymmetricForm<Q> zero(2, 2);
  CHECK(hom::section(zero)(vec({3, -4})) == 0);

  SymmetricForm<Q> phi(2, 2);
  phi.set({0, 0}, Q(1));
  phi.set({1, 0}, Q(2));
  phi.set({1, 1}, Q(4));
  CHECK(phi.at({0, 1}) == 2);
  CHECK(hom::section(phi)(vec({1, 1})) == 9);
  CHECK(diagonal_oracle(phi, vec({1, 1})) == 9);
}

TEST_CASE("section agrees with the ordered-tuple expansion", "[polarization]") {
  std::mt19937_64 rng(12);
  for (unsigned n = 1; n <= 4; ++n)
    for (int t = 0; t < 10; ++t) {
      const auto phi = hom::random_form(rng, n, 3);
      const auto x = hom::random_rational_element(rng, 3);
      REQUIRE(hom::section(phi)(x) == diagonal_oracle(phi, x));
    }
}

TEST_CASE("symmetric forms are multiadditive in each slot", "[polarization]") {
  std::mt19937_64 rng(13);
  const auto phi = hom::random_form(rng, 3, 3);
  for (int t = 0; t < 20; ++t) {
    const auto a = hom::random_rational_element(rng, 3);
    const auto b = hom::random_rational_element(rng, 3);
    const auto c = hom::random_rational_element(rng, 3);
    const auto d = hom::random_rational_element(rng, 3);
    CHECK(phi(std::vector<GQ>{a + b, c, d}) == phi(std::vector<GQ>{a, c, d}) + phi(std::vector<GQ>{b, c, d}));
    CHECK(phi(std::vector<GQ>{a, b, c}) == phi(std::vector<GQ>{c, a, b}));
  }
}

TEST_CASE("project examples", "[polarization]") {
  std::mt19937_64 rng(14);
  for (unsigned n = 2; n <= 4; ++n) {
    const auto low = Measure<Q>::polynomial(hom::random_polynomial(rng, 3, n - 1));
    CHECK(hom::project(low, n).is_zero());
    const auto phi = hom::random_form(rng, n, 3);
    CHECK(hom::project(hom::section(phi), n) == phi);
  }
  CHECK_THROWS_AS(hom::project(Measure<Q>::zero(20), 6), hom::CapExceeded);
}

TEST_CASE("decompose examples", "[polarization]") {
  const auto lambda = Polynomial<Q>::linear(std::vector<Q>{Q(2), Q(-1)});
  const auto dec = hom::decompose(Measure<Q>::polynomial(lambda + lambda.pow(2)), 2);
  REQUIRE(dec.components.size() == 2);
  const std::vector<Q> l{Q(2), Q(-1)};
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(dec.components[0].at({i}) == l[i]);
    for (std::size_t j = 0; j < 2; ++j) CHECK(dec.components[1].at({i, j}) == l[i] * l[j]);
  }

  const auto additive = hom::decompose(Measure<Q>::polynomial(lambda), 1);
  REQUIRE(additive.components.size() == 1);
  CHECK(additive.components[0].at({0}) == 2);
  CHECK(additive.components[0].at({1}) == -1);

  const std::vector<Q> z{Q(1, 2), Q(-3), Q(2, 5)};
  const auto q = hom::decompose(hom::quantum_measure_from_amplitudes<Q>(z), 2);
  REQUIRE(q.components.size() == 2);
  CHECK(q.components[0].is_zero());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(q.components[1].at({i, j}) == z[i] * z[j]);
}

TEST_CASE("decompose round-trips random polynomial measures", "[polarization]") {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 20; ++t) {
    const auto p = hom::random_polynomial(rng, 3, 4);
    const auto dec = hom::decompose(Measure<Q>::polynomial(p), 4);
    CHECK(dec.polynomial() == p);
    const auto x = hom::random_rational_element(rng, 3);
    CHECK(dec.evaluate(x) == p(x));
  }
}

TEST_CASE("decompose rejects inputs outside M_n", "[polarization]") {
  const auto cube = Measure<Q>::polynomial(Polynomial<Q>::linear(std::vector<Q>{Q(1), Q(1)}).pow(3));
  CHECK_THROWS_AS(hom::decompose(cube, 2), hom::NotInMeasureSpace);
  const auto closure = Measure<Q>::function(2, [cube](const GQ& g) { return cube(g); });
  CHECK_THROWS_AS(hom::decompose(closure, 2), hom::NotInMeasureSpace);
  CHECK_NOTHROW(hom::decompose(closure, 3));
  CHECK_THROWS_AS(hom::decompose(cube, 0), hom::InvalidArgument);
}

TEST_CASE("approximate decomposition needs an explicit opt-in", "[polarization]") {
  const auto q = hom::quantum_measure_from_amplitudes<hom::Complex>({{0.6, 0.0}, {0.0, 0.8}});
  CHECK_THROWS_AS(hom::decompose(q, 2), hom::InvalidArgument);
  hom::DecomposeOptions opts;
  opts.allow_approx = true;
  const auto dec = hom::decompose(q, 2, opts);
  CHECK_FALSE(dec.warnings.empty());
  const auto x = GroupElement<hom::Complex>(std::vector<hom::Complex>{2.0, -1.0});
  CHECK(std::abs(dec.evaluate(x) - q(x)) < 1e-9);
}

TEST_CASE("binomial_section_check examples", "[polarization]") {
  CHECK(hom::binomial_section_check(2, 1) == 1);
  CHECK(hom::binomial_section_check(2, 2) == 1);
  // l = 2..5: -C(4,0) + C(4,1) - C(4,2) + C(4,3)
  CHECK(hom::binomial_section_check(5, 2) == 1);
  CHECK_THROWS_AS(hom::binomial_section_check(2, 3), hom::InvalidArgument);
  CHECK_THROWS_AS(hom::binomial_section_check(2, 0), hom::InvalidArgument);
}
