#pragma once

// The invariant suite behind `hom selftest` and the acceptance binary.
// Every check is seeded and exact unless it runs the slit simulator.

#include "hom/hopf.hpp"
#include "hom/random.hpp"
#include "hom/slits.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace hom::selftest {

struct CheckResult {
  std::string id;
  std::string identity;  // the law or rule being exercised
  bool passed = false;
  std::string detail;
  double seconds = 0;
  double time_limit = 0;  // 0 = no limit
};

namespace detail {

using Q = Rational;
using GQ = GroupElement<Q>;

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note << "FAILED: " << what;
    }
  }
};

inline std::vector<GQ> random_tuple(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  std::vector<GQ> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(random_rational_element(rng, m));
  return t;
}

inline Outcome three_slit(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed);
  double worst_amp = 0, worst_geo = 0;
  for (int t = 0; t < 200; ++t) {
    const auto mu = quantum_measure_from_amplitudes(random_amplitudes(rng, 3));
    std::vector<GroupElement<Complex>> e;
    for (std::size_t i = 0; i < 3; ++i) e.push_back(GroupElement<Complex>::basis(3, i));
    worst_amp = std::max(worst_amp, std::abs(interference(mu, e)));
  }
  for (int t = 0; t < 200; ++t) worst_geo = std::max(worst_geo, run_sum_rules(random_scenario(rng, 3)).max_i3);
  o.require(worst_amp < 1e-9, "max |I3| over random amplitudes below 1e-9");
  o.require(worst_geo < 1e-9, "max |I3| over random geometries below 1e-9");
  o.note << " max|I3| amplitudes=" << worst_amp << " geometries=" << worst_geo;
  return o;
}

inline Outcome four_slit(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 1);
  double worst = 0;
  int with_interference = 0;
  for (int t = 0; t < 200; ++t) {
    const auto rep = run_sum_rules(random_scenario(rng, 4));
    worst = std::max(worst, rep.max_i4);
    if (rep.max_i2 > 1e-6) ++with_interference;
  }
  o.require(worst < 1e-9, "max |I4| below 1e-9");
  o.require(with_interference >= 190, "at least 95% of geometries show |I2| > 1e-6");
  o.note << " max|I4|=" << worst << " interfering=" << with_interference << "/200";
  return o;
}

inline Outcome recursion(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 2);
  std::size_t checks = 0;
  for (unsigned k = 2; k <= 5; ++k)
    for (int t = 0; t < 500; ++t) {
      const auto all = random_tuple(rng, 3, k + 1);
      const auto mu = random_table_over(rng, all, false);
      const std::span<const GQ> rest(all.begin() + 2, all.end());
      o.require(check_recursion(mu, all[0], all[1], rest), "recursion at k=" + std::to_string(k));
      ++checks;
    }
  o.note << " " << checks << " table measures";
  return o;
}

inline Outcome power_law(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 3);
  const std::size_t m = 3;
  for (unsigned d = 1; d <= 4; ++d) {
    auto lambda = random_rational_element(rng, m);
    if (lambda[0] == 0) lambda = lambda + GQ::basis(m, 0);
    const auto mu = Measure<Q>::polynomial(Polynomial<Q>::linear(lambda.coeffs()).pow(d));
    const std::vector<GQ> witness(d, GQ::basis(m, 0));
    const Q wv = interference(mu, witness);
    // I_d(e_0, ..., e_0) = d! lambda_0^d
    Q expected(static_cast<long long>(factorial(d)));
    for (unsigned i = 0; i < d; ++i) expected *= lambda[0];
    o.require(wv != 0 && wv == expected, "I_d witness nonzero for d=" + std::to_string(d));
    for (int t = 0; t < 100; ++t)
      o.require(interference(mu, random_tuple(rng, m, d + 1)) == 0, "I_{d+1} vanishes for d=" + std::to_string(d));
  }
  return o;
}

inline Outcome polarization_identity(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 4);
  for (unsigned n = 2; n <= 4; ++n) {
    const auto mu = Measure<Q>::polynomial(random_polynomial(rng, 3, n, true));
    for (int t = 0; t < 100; ++t) {
      const auto args = random_tuple(rng, 3, n);
      const Q lhs = interference(mu, args);
      const Q rhs = Q(static_cast<long long>(factorial(n))) * polarize(mu, n, args);
      o.require(lhs == rhs, "I_n = n! Phi at n=" + std::to_string(n));
    }
  }
  return o;
}

inline Outcome section_projection(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 5);
  for (unsigned n = 2; n <= 4; ++n)
    for (int t = 0; t < 50; ++t) {
      const auto phi = random_form(rng, n, 3);
      o.require(project(section(phi), n) == phi, "project(section(phi)) = phi at n=" + std::to_string(n));
    }
  return o;
}

inline Outcome kernel(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 6);
  for (unsigned n = 2; n <= 4; ++n)
    for (int t = 0; t < 50; ++t) {
      const auto low = Measure<Q>::polynomial(random_polynomial(rng, 3, n - 1));
      o.require(project(low, n).is_zero(), "degree <= n-1 projects to zero at n=" + std::to_string(n));
      const auto top = Measure<Q>::polynomial(random_polynomial(rng, 3, n, true));
      o.require(!project(top, n).is_zero(), "degree n projects to nonzero at n=" + std::to_string(n));
    }
  return o;
}

inline Outcome decomposition_round_trip(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 7);
  for (int t = 0; t < 50; ++t) {
    const auto p = random_polynomial(rng, 3, 1 + static_cast<unsigned>(t % 4));
    const auto mu = Measure<Q>::polynomial(p);
    const auto d = decompose(mu, 4);
    o.require(d.polynomial() == p, "reconstruction polynomial equals the input");
    for (unsigned k = 1; k <= 4; ++k)
      o.require(d.components[k - 1].diagonal_polynomial() == p.homogeneous_part(k),
                "component " + std::to_string(k) + " is the degree-k part");
    for (int s = 0; s < 5; ++s) {
      const auto x = random_rational_element(rng, 3);
      o.require(d.evaluate(x) == mu(x), "reconstruction matches at a random point");
    }
  }
  return o;
}

inline Outcome quadratic_parts(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 8);
  for (int t = 0; t < 20; ++t) {
    // Black-box view so the parity split goes through the +/- evaluation formulas.
    const auto p = random_polynomial(rng, 3, 2, false, 6);
    const auto mu = Measure<Q>::function(3, [p](const GQ& g) { return p(g); });
    const auto [even, odd] = parity_split(mu);
    for (int s = 0; s < 200; ++s) {
      const auto a = random_rational_element(rng, 3);
      const auto b = random_rational_element(rng, 3);
      o.require(odd(a + b) == odd(a) + odd(b), "odd part is additive");
      const Q phi_ab = (even(a + b) - even(a - b)) / Q(4);
      o.require(phi_ab == polarize(even, 2, std::vector{a, b}), "quarter-difference form equals polarization");
      const Q phi_xx = (even(a + a) - even(a - a)) / Q(4);
      o.require(phi_xx == even(a), "even part equals Phi(x, x)");
    }
  }
  return o;
}

inline Outcome overlapping_forms(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 9);
  const std::size_t m = 4;
  const auto lambda = random_rational_element(rng, m);
  const auto mu = Measure<Q>::polynomial(Polynomial<Q>::linear(lambda.coeffs()).pow(2));
  std::size_t pairs = 0;
  for (const auto& a : SubsetMask::all(m))
    for (const auto& b : SubsetMask::all(m)) {
      const auto f = eval_i2_overlapping(mu, a, b);
      o.require(f.form1 == f.form2 && f.form2 == f.form_g, "three I2 forms agree");
      ++pairs;
    }
  o.note << " " << pairs << " subset pairs";
  return o;
}

inline Outcome coderivative_bridge(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 10);
  for (int t = 0; t < 200; ++t) {
    const unsigned k = 1 + static_cast<unsigned>(t % 5);
    const auto args = random_tuple(rng, 3, k);
    Measure<Q> mu = Measure<Q>::zero(3);
    switch (t % 3) {
      case 0: mu = Measure<Q>::polynomial(random_polynomial(rng, 3, 4)); break;
      case 1: mu = quantum_measure_from_amplitudes(random_rational_element(rng, 3).coeffs()); break;
      default: mu = random_table_over(rng, args, true); break;
    }
    const auto f = GroupFunction<Q>::from_measure(mu);
    o.require(counit(f) == 0, "measure has vanishing counit");
    o.require(coderivative_at_identity(f, k, args) == interference(mu, args),
              "coderivative equals I_k at k=" + std::to_string(k));
  }
  return o;
}

inline Outcome primitivity(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 11);
  const TupleSampler<Q> samples(3, seed);
  for (unsigned d = 1; d <= 4; ++d) {
    Polynomial<Q> mono(3);
    mono.add_term(random_monomial(rng, 3, d), Q(1 + static_cast<int>(d)));
    const auto rep = classify_primitivity(GroupFunction<Q>::from_polynomial(mono), 5, samples);
    o.require(rep.order == d && rep.evidence == Evidence::exact, "monomial of degree d is d-primitive");
  }
  auto z = random_rational_element(rng, 3);
  if (z[0] == 0) z = z + GQ::basis(3, 0);
  const auto quantum = classify_primitivity(GroupFunction<Q>::from_measure(quantum_measure_from_amplitudes(z.coeffs())), 5, samples);
  o.require(quantum.order == 2 && quantum.evidence == Evidence::exact, "quantum measure is 2-primitive");
  std::vector<Q> weights{Q(1, 2), Q(1, 3), Q(1, 6)};
  const auto classical = classify_primitivity(
      GroupFunction<Q>::from_measure(Measure<Q>::polynomial(Polynomial<Q>::linear(weights))), 5, samples);
  o.require(classical.order == 1, "classical additive measure is 1-primitive");
  return o;
}

inline Outcome zero_at_identity(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 12);
  std::size_t fixtures = 0;
  auto check_q = [&](const Measure<Q>& mu, const std::string& what) {
    o.require(mu(GQ::zero(mu.dimension())) == 0, what);
    ++fixtures;
  };
  for (unsigned d = 1; d <= 4; ++d) {
    const auto lambda = random_rational_element(rng, 3);
    check_q(Measure<Q>::polynomial(Polynomial<Q>::linear(lambda.coeffs()).pow(d)), "power of linear functional");
  }
  for (int t = 0; t < 10; ++t) {
    const auto mu = Measure<Q>::polynomial(random_polynomial(rng, 3, 4));
    check_q(mu, "random polynomial measure");
    const auto [even, odd] = parity_split(mu);
    check_q(even, "even part");
    check_q(odd, "odd part");
    check_q(bimodule_action(random_rational_element(rng, 3), mu, random_rational_element(rng, 3)), "bimodule action");
    check_q(decompose(mu, 4).reconstruction(), "decomposition reconstruction");
    check_q(section(random_form(rng, 1 + static_cast<unsigned>(t % 4), 3)), "section of a form");
    check_q(quantum_measure_from_amplitudes(random_rational_element(rng, 3).coeffs()), "rational quantum measure");
  }
  const auto g = quantum_measure_from_amplitudes(std::vector<GaussianRational>{{Q(1, 2), Q(1, 3)}, {Q(-2), Q(1)}});
  o.require(g(GroupElement<GaussianRational>::zero(2)) == GaussianRational(0), "Gaussian quantum measure");
  ++fixtures;
  for (std::size_t k = 2; k <= 6; ++k) {
    const auto mu = build_measure(random_scenario(rng, k));
    o.require(mu(GroupElement<Complex>::zero(k)) == Complex(0.0, 0.0), "slit measure");
    ++fixtures;
  }
  o.note << " " << fixtures << " fixtures";
  return o;
}

inline Outcome binomial_identity(std::uint64_t) {
  Outcome o;
  for (unsigned n = 1; n <= 8; ++n)
    for (unsigned k = 1; k <= n; ++k)
      o.require(binomial_section_check(n, k) == 1, "n=" + std::to_string(n) + " k=" + std::to_string(k));
  return o;
}

// Supporting invariants beyond the acceptance list.

inline Outcome set_algebra(std::uint64_t) {
  Outcome o;
  for (std::size_t m = 1; m <= 6; ++m)
    for (const auto& a : SubsetMask::all(m))
      for (const auto& b : SubsetMask::all(m)) {
        const auto ca = characteristic_function<Q>(a);
        const auto cb = characteristic_function<Q>(b);
        if ((a & b).is_empty()) o.require(characteristic_function<Q>(a | b) == ca + cb, "disjoint union adds");
        o.require(characteristic_function<Q>(a | b) == characteristic_function<Q>(a - b) +
                                                           characteristic_function<Q>(b - a) +
                                                           characteristic_function<Q>(a & b),
                  "union splits into differences and intersection");
        o.require((a ^ b) == ((a - b) | (b - a)), "symmetric difference");
        o.require((a | b).complement() == (a.complement() & b.complement()), "De Morgan");
      }
  return o;
}

inline Outcome inclusion_chain(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 13);
  for (unsigned n = 1; n <= 4; ++n)
    for (int t = 0; t < 10; ++t) {
      const auto mu = Measure<Q>::polynomial(random_polynomial(rng, 3, n));
      for (int s = 0; s < 5; ++s) {
        o.require(check_measure_identity(mu, n, random_tuple(rng, 3, n + 1)), "order-n identity");
        o.require(check_measure_identity(mu, n + 1, random_tuple(rng, 3, n + 2)), "order-(n+1) identity");
        const auto acted = bimodule_action(random_rational_element(rng, 3), mu, random_rational_element(rng, 3));
        o.require(check_measure_identity(acted, n, random_tuple(rng, 3, n + 1)), "bimodule action stays in M_n");
      }
    }
  return o;
}

inline Outcome hopf_laws(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 14);
  for (int t = 0; t < 20; ++t) {
    const auto f = GroupFunction<Q>::from_polynomial(random_polynomial(rng, 3, 3) +
                                                     Polynomial<Q>::constant(3, random_rational(rng)));
    const auto g = random_rational_element(rng, 3);
    const auto h = random_rational_element(rng, 3);
    const auto l = random_rational_element(rng, 3);
    const auto zero = GQ::zero(3);
    o.require(coproduct_eval(f, g, h) == coproduct_eval(f, h, g), "cocommutativity");
    o.require(coproduct_eval(f, g + h, l) == coproduct_eval(f, g, h + l), "coassociativity");
    o.require(coproduct_eval(f, g, zero) == f(g) && coproduct_eval(f, zero, g) == f(g), "counit law");
    o.require(antipode_eval(antipode(f), g) == f(g), "antipode is an involution");
  }
  return o;
}

inline Outcome permutation_symmetry(std::uint64_t seed) {
  Outcome o;
  std::mt19937_64 rng(seed + 15);
  for (int t = 0; t < 30; ++t) {
    const unsigned k = 2 + static_cast<unsigned>(t % 4);
    auto args = random_tuple(rng, 3, k);
    const auto mu = random_table_over(rng, args, false);
    const Q base = interference(mu, args);
    std::shuffle(args.begin(), args.end(), rng);
    o.require(interference(mu, args) == base, "I_k symmetric under permutation");
  }
  return o;
}

}  // namespace detail

struct Check {
  std::string id;
  std::string identity;
  double time_limit;
  std::function<detail::Outcome(std::uint64_t)> run;
};

/// Acceptance criteria first (ids A1..A14), then supporting invariants.
inline std::vector<Check> checks() {
  using namespace detail;
  return {
      {"A1", "three-slit quantum sum rule I3 = 0", 1.0, three_slit},
      {"A2", "four-slit: I4 = 0 with interference present", 2.0, four_slit},
      {"A3", "I_k recursion for arbitrary maps", 0, recursion},
      {"A4", "k-th power of an additive functional kills I_r, r > k", 0, power_law},
      {"A5", "polarization identity I_n = n! Phi", 0, polarization_identity},
      {"A6", "projection after section is the identity", 0, section_projection},
      {"A7", "kernel of the projection is M_{n-1}", 0, kernel},
      {"A8", "homogeneous decomposition round trip", 0, decomposition_round_trip},
      {"A9", "quadratic measures: odd part additive, even part Phi(x,x)", 0, quadratic_parts},
      {"A10", "overlapping-set forms of I2 agree", 0, overlapping_forms},
      {"A11", "coderivatives at the identity equal I_k", 0, coderivative_bridge},
      {"A12", "k-primitivity classification", 0, primitivity},
      {"A13", "mu(0) = 0 for every constructed measure", 0, zero_at_identity},
      {"A14", "enveloping-subset binomial sum equals 1", 0, binomial_identity},
      {"S1", "characteristic functions and subset algebra", 0, set_algebra},
      {"S2", "M_{n-1} in M_n and bimodule stability", 0, inclusion_chain},
      {"S3", "coproduct, counit and antipode laws", 0, hopf_laws},
      {"S4", "I_k permutation symmetry", 0, permutation_symmetry},
  };
}

inline CheckResult run_check(const Check& c, std::uint64_t seed) {
  CheckResult r{c.id, c.identity, false, "", 0, c.time_limit};
  const auto start = std::chrono::steady_clock::now();
  try {
    auto out = c.run(seed);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = out.ok;
    r.detail = out.note.str();
    if (r.time_limit > 0 && r.seconds > r.time_limit) {
      r.passed = false;
      r.detail += " runtime " + std::to_string(r.seconds) + "s over limit";
    }
  } catch (const std::exception& e) {
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

inline std::vector<CheckResult> run_all(std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (const auto& c : checks()) out.push_back(run_check(c, seed));
  return out;
}

}  // namespace hom::selftest
