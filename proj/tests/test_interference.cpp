#include "hom/interference.hpp"
#include "hom/random.hpp"

#include <catch_amalgamated.hpp>

using hom::Complex;
using hom::GroupElement;
using hom::Measure;
using hom::Polynomial;
using hom::SubsetMask;
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

// Oracle: I_k as the iterated difference operator
// D_a f(x) = f(x + a) - f(x), so I_k(a_1..a_k) = (D_{a_1} ... D_{a_k} mu)(0)
// after adding back the (-1)^k mu(0) term that I_k omits.
Q difference_oracle(const Measure<Q>& mu, const std::vector<GQ>& args, std::size_t pos, const GQ& base) {
  if (pos == args.size()) return mu(base);
  return difference_oracle(mu, args, pos + 1, base + args[pos]) - difference_oracle(mu, args, pos + 1, base);
}

Q ik_oracle(const Measure<Q>& mu, const std::vector<GQ>& args) {
  const Q full = difference_oracle(mu, args, 0, GQ::zero(args.front().size()));
  const Q empty = mu(GQ::zero(args.front().size()));
  return args.size() % 2 == 0 ? full - empty : full + empty;
}

}  // namespace

TEST_CASE("eval_ik examples", "[interference]") {
  std::mt19937_64 rng(1);
  const auto additive = linear_power({Q(3), Q(-1, 2)}, 1);
  for (int t = 0; t < 20; ++t) {
    const std::vector<GQ> ab{hom::random_rational_element(rng, 2), hom::random_rational_element(rng, 2)};
    CHECK(hom::interference(additive, ab) == 0);
  }

  const auto q = hom::quantum_measure_from_amplitudes(hom::random_amplitudes(rng, 3));
  for (int t = 0; t < 20; ++t) {
    std::vector<GroupElement<Complex>> abc;
    for (int i = 0; i < 3; ++i) abc.push_back(hom::random_element<Complex>(rng, 3));
    CHECK(std::abs(hom::interference(q, abc)) < 1e-9);
  }

  // 64 - 8 - 27 - 27 + 1 + 1 + 8
  const auto cube = linear_power({Q(1), Q(2)}, 3);
  const std::vector<GQ> args{vec({1, 0}), vec({1, 0}), vec({0, 1})};
  CHECK(hom::interference(cube, args) == 12);
  CHECK(ik_oracle(cube, args) == 12);
}

TEST_CASE("I_1 is the measure itself", "[interference]") {
  const auto cube = linear_power({Q(1), Q(2)}, 3);
  CHECK(hom::interference(cube, std::vector<GQ>{vec({1, 1})}) == 27);
}

TEST_CASE("eval_ik matches the difference-operator oracle", "[interference]") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 40; ++t) {
    const auto mu = Measure<Q>::polynomial(hom::random_polynomial(rng, 3, 4));
    for (std::size_t k = 1; k <= 5; ++k) {
      std::vector<GQ> args;
      for (std::size_t i = 0; i < k; ++i) args.push_back(hom::random_rational_element(rng, 3));
      REQUIRE(hom::interference(mu, args) == ik_oracle(mu, args));
    }
  }
}

TEST_CASE("breakdown lists every non-empty subset with its sign", "[interference]") {
  const auto cube = linear_power({Q(1), Q(2)}, 3);
  const std::vector<GQ> args{vec({1, 0}), vec({1, 0}), vec({0, 1})};
  const auto r = hom::eval_ik(cube, std::span<const GQ>(args), true);
  REQUIRE(r.terms);
  CHECK(r.terms->size() == 7);
  Q sum(0);
  for (const auto& t : *r.terms) {
    CHECK(t.sign == ((3 - t.subset.size()) % 2 == 0 ? 1 : -1));
    sum += t.sign > 0 ? t.value : Q(-t.value);
  }
  CHECK(sum == r.value);
  CHECK_FALSE(hom::eval_ik(cube, std::span<const GQ>(args)).terms);
}

TEST_CASE("eval_ik input validation", "[interference]") {
  const auto cube = linear_power({Q(1), Q(2)}, 3);
  CHECK_THROWS_AS(hom::interference(cube, std::vector<GQ>{}), hom::InvalidArgument);
  CHECK_THROWS_AS(hom::interference(cube, std::vector<GQ>{vec({1, 0}), vec({1, 0, 0})}), hom::DimensionMismatch);
  CHECK_THROWS_AS(hom::interference(cube, std::vector<GQ>(17, vec({1, 0}))), hom::CapExceeded);
}

TEST_CASE("check_recursion examples", "[interference]") {
  std::mt19937_64 rng(3);
  for (std::size_t k = 2; k <= 5; ++k) {
    for (int t = 0; t < 20; ++t) {
      std::vector<GQ> all;
      for (std::size_t i = 0; i <= k; ++i) all.push_back(hom::random_rational_element(rng, 2));
      const auto mu = hom::random_table_over(rng, all, false);
      const std::vector<GQ> rest(all.begin() + 2, all.end());
      REQUIRE(hom::check_recursion<Q>(mu, all[0], all[1], rest, hom::Tolerance{0}));
    }
  }
  const auto cube = linear_power({Q(1), Q(2)}, 3);
  const auto b = vec({2, -1});
  const auto c = vec({0, 3});
  const std::vector<GQ> rest{vec({1, 1}), vec({-1, 2})};
  CHECK(hom::check_recursion<Q>(cube, b, c, rest));
  CHECK(hom::interference(cube, std::vector<GQ>{b, c, rest[0], rest[1]}) == 0);
  const std::vector<GQ> zeros{GQ::zero(2)};
  CHECK(hom::check_recursion<Q>(cube, GQ::zero(2), GQ::zero(2), zeros));
  CHECK_THROWS_AS(hom::check_recursion<Q>(cube, b, c, std::vector<GQ>{}), hom::InvalidArgument);
}

TEST_CASE("eval_i2_overlapping examples", "[interference]") {
  const auto square = linear_power({Q(1), Q(1), Q(1)}, 2);
  const auto f = hom::eval_i2_overlapping(square, SubsetMask(3, 0b011), SubsetMask(3, 0b110));
  CHECK(f.form1 == 8);
  CHECK(f.form2 == 8);
  CHECK(f.form_g == 8);

  const auto additive = linear_power({Q(2), Q(-1), Q(5)}, 1);
  for (const auto& a : SubsetMask::all(3))
    for (const auto& b : SubsetMask::all(3)) {
      // For additive mu the set-algebra forms pick up 2 mu(A n B); only the
      // group form vanishes, so the three agree exactly when A n B is empty.
      const auto g = hom::eval_i2_overlapping(additive, a, b);
      const Q overlap = additive(hom::characteristic_function<Q>(a & b));
      CHECK(g.form_g == 0);
      CHECK(g.form1 == 2 * overlap);
      CHECK(g.form2 == 2 * overlap);
      if ((a & b).is_empty()) {
        const auto s = hom::eval_i2_overlapping(square, a, b);
        const Q direct = hom::interference(
            square, std::vector<GQ>{hom::characteristic_function<Q>(a), hom::characteristic_function<Q>(b)});
        CHECK(s.form1 == direct);
        CHECK(s.form2 == direct);
        CHECK(s.form_g == direct);
      }
    }
}

TEST_CASE("probe_order examples", "[interference]") {
  const hom::TupleSampler<Q> samples(2);
  const auto square = hom::probe_order(linear_power({Q(1), Q(-2)}, 2), 4, samples);
  CHECK(square.order == 2u);
  CHECK(square.evidence == hom::Evidence::exact);

  const auto cube = hom::probe_order(linear_power({Q(1), Q(2)}, 3), 4, samples);
  CHECK(cube.order == 3u);
  CHECK(cube.evidence == hom::Evidence::exact);
  REQUIRE(cube.witness.size() == 3);
  CHECK(cube.witness_value != 0);
  CHECK(hom::interference(linear_power({Q(1), Q(2)}, 3), cube.witness) == cube.witness_value);

  std::mt19937_64 rng(4);
  const auto q = hom::quantum_measure_from_amplitudes(hom::random_amplitudes(rng, 3));
  const hom::TupleSampler<Complex> triples(3, 42, 200);
  const auto rep = hom::probe_order(q, 4, triples, hom::Tolerance{1e-9});
  CHECK(rep.order == 2u);
  CHECK(rep.evidence == hom::Evidence::sampled);
  CHECK(rep.summary == "consistent with order <= 2 on sample set");
}

TEST_CASE("probe_order on black boxes reports caps and non-measures", "[interference]") {
  const auto fifth = linear_power({Q(1)}, 5);
  const auto closure = Measure<Q>::function(1, [fifth](const GQ& g) { return fifth(g); });
  const hom::TupleSampler<Q> samples(1);
  const auto rep = hom::probe_order(closure, 3, samples);
  CHECK_FALSE(rep.order);
  CHECK(rep.exceeds_cap);
  CHECK(rep.summary == "order > 3 on samples");
  CHECK(hom::probe_order(closure, 5, samples).order == 5u);

  const auto shifted = Measure<Q>::polynomial(Polynomial<Q>::linear(std::vector<Q>{Q(1)}) + Polynomial<Q>::constant(1, Q(1)));
  const auto bad = hom::probe_order(shifted, 3, samples);
  CHECK_FALSE(bad.order);
  CHECK_THROWS_AS(hom::probe_order(fifth, 0, samples), hom::InvalidArgument);
}
