#pragma once

// Interference functionals
//
//   I_k(a_1..a_k) = sum_{nonempty S subset {1..k}} (-1)^{k-|S|} mu(sum_{i in S} a_i)
//
// with I_1(a) = mu(a). The set-based k-slit form is recovered by passing
// characteristic functions of disjoint sets.

#include "hom/measure.hpp"
#include "hom/sampling.hpp"

#include <optional>
#include <string>

namespace hom {

/// Largest supported k; the sum has 2^k - 1 terms.
inline constexpr unsigned max_interference_order = 16;

template <Scalar S>
struct SubsetTerm {
  std::vector<std::size_t> subset;  // argument positions, ascending
  int sign;
  S value;  // mu(sum of the selected arguments)
};

template <Scalar S>
struct InterferenceResult {
  unsigned k = 0;
  S value = from_int<S>(0);
  std::optional<std::vector<SubsetTerm<S>>> terms;
};

template <Scalar S>
InterferenceResult<S> eval_ik(const Measure<S>& mu, std::span<const GroupElement<S>> args, bool breakdown = false) {
  if (args.empty()) throw InvalidArgument("I_k needs at least one argument");
  const auto k = static_cast<unsigned>(args.size());
  if (k > max_interference_order)
    throw CapExceeded("I_k limited to k <= " + std::to_string(max_interference_order));
  const std::size_t m = common_dimension(args);
  if (m != mu.dimension()) throw DimensionMismatch(mu.dimension(), m);

  const auto sums = all_subset_sums(args, m);
  InterferenceResult<S> res;
  res.k = k;
  if (breakdown) res.terms.emplace();
  Summation<S> total;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    const auto size = static_cast<unsigned>(std::popcount(mask));
    const int sign = ((k - size) % 2 == 0) ? 1 : -1;
    const S v = mu(sums[mask]);
    total.add(sign > 0 ? v : -v);
    if (breakdown) {
      std::vector<std::size_t> subset;
      for (unsigned i = 0; i < k; ++i)
        if ((mask >> i) & 1u) subset.push_back(i);
      res.terms->push_back({std::move(subset), sign, v});
    }
  }
  res.value = total.value();
  return res;
}

template <Scalar S>
S interference(const Measure<S>& mu, std::span<const GroupElement<S>> args) {
  return eval_ik(mu, args).value;
}

template <Scalar S>
S interference(const Measure<S>& mu, const std::vector<GroupElement<S>>& args) {
  return eval_ik(mu, std::span<const GroupElement<S>>(args)).value;
}

/// Checks I_{k+1}(b,c,rest) = I_k(b+c,rest) - I_k(b,rest) - I_k(c,rest)
/// where rest has k-1 entries. Holds for an arbitrary map mu.
template <Scalar S>
bool check_recursion(const Measure<S>& mu, const GroupElement<S>& b, const GroupElement<S>& c,
                     std::span<const GroupElement<S>> rest, Tolerance tol = {}) {
  const std::size_t k = rest.size() + 1;
  if (k < 2) throw InvalidArgument("recursion check needs k >= 2 (at least one trailing argument)");
  auto with_head = [&](std::initializer_list<GroupElement<S>> head) {
    std::vector<GroupElement<S>> v(head);
    v.insert(v.end(), rest.begin(), rest.end());
    return v;
  };
  const S lhs = interference(mu, with_head({b, c}));
  const S rhs = interference(mu, with_head({b + c})) - interference(mu, with_head({b})) -
                interference(mu, with_head({c}));
  return near(lhs, rhs, tol);
}

/// The three expressions for I_2 on overlapping subsets A and B.
template <Scalar S>
struct OverlapForms {
  S form1;  // mu(A u B) + mu(A n B) - mu(A \ B) - mu(B \ A)
  S form2;  // mu(A ^ B) + mu(A) + mu(B) - 2 mu(A \ B) - 2 mu(B \ A)
  S form_g;  // mu(chi_A + chi_B) - mu(chi_A) - mu(chi_B)
};

template <Scalar S>
OverlapForms<S> eval_i2_overlapping(const Measure<S>& mu, const SubsetMask& a, const SubsetMask& b) {
  auto mu_of = [&](const SubsetMask& s) { return mu(characteristic_function<S>(s)); };
  const S two = from_int<S>(2);
  const S a_minus_b = mu_of(a - b);
  const S b_minus_a = mu_of(b - a);
  const S mu_a = mu_of(a);
  const S mu_b = mu_of(b);
  OverlapForms<S> out{
      mu_of(a | b) + mu_of(a & b) - a_minus_b - b_minus_a,
      mu_of(a ^ b) + mu_a + mu_b - two * a_minus_b - two * b_minus_a,
      mu(characteristic_function<S>(a) + characteristic_function<S>(b)) - mu_a - mu_b,
  };
  return out;
}

enum class Evidence { exact, sampled };

inline const char* to_string(Evidence e) { return e == Evidence::exact ? "exact" : "sampled"; }

template <Scalar S>
struct OrderReport {
  /// Empty when no order <= n_max fits (or the input is not a measure).
  std::optional<unsigned> order;
  Evidence evidence = Evidence::sampled;
  bool exceeds_cap = false;
  /// Tuple on which I_order is nonzero (empty for order 0).
  std::vector<GroupElement<S>> witness;
  S witness_value = from_int<S>(0);
  std::size_t tuples_checked = 0;
  std::string summary;
};

namespace detail {

/// Basis tuple taken from a top-degree monomial of p; I_d is nonzero there.
template <Scalar S>
std::vector<GroupElement<S>> top_monomial_witness(const Polynomial<S>& p) {
  const unsigned d = p.degree();
  std::vector<GroupElement<S>> w;
  for (const auto& [mono, c] : p.terms()) {
    if (total_degree(mono) != d) continue;
    for (std::size_t i = 0; i < mono.size(); ++i)
      for (unsigned e = 0; e < mono[i]; ++e) w.push_back(GroupElement<S>::basis(p.variables(), i));
    break;
  }
  return w;
}

template <Scalar S>
bool covered(const Measure<S>& mu, const std::vector<GroupElement<S>>& t) {
  if (mu.kind() != MeasureKind::table) return true;
  const auto sums = all_subset_sums(std::span<const GroupElement<S>>(t), mu.dimension());
  for (std::size_t mask = 1; mask < sums.size(); ++mask)
    if (!mu.covers(sums[mask])) return false;
  return true;
}

}  // namespace detail

/// Order of a measure: mu in M_n iff I_{n+1} vanishes. Exact when the
/// measure has a polynomial form; otherwise the smallest n whose I_{n+1}
/// vanishes on every sampled tuple.
template <Scalar S>
OrderReport<S> probe_order(const Measure<S>& mu, unsigned n_max, const TupleSampler<S>& samples,
                           Tolerance tol = {}) {
  if (n_max < 1) throw InvalidArgument("n_max must be at least 1");
  OrderReport<S> rep;
  if (auto p = mu.polynomial_form()) {
    rep.evidence = Evidence::exact;
    if (!is_zero(p->constant_term(), tol)) {
      rep.summary = "not a measure: nonzero constant term, so mu(0) != 0";
      return rep;
    }
    const unsigned d = p->degree();
    rep.order = d;
    if (d > 0) {
      rep.witness = detail::top_monomial_witness(*p);
      rep.witness_value = interference(mu, rep.witness);
    }
    rep.summary = "order " + std::to_string(d) + " (exact: polynomial of total degree " + std::to_string(d) + ")";
    return rep;
  }

  for (unsigned n = 0; n <= n_max; ++n) {
    bool vanishes = true;
    for (const auto& t : samples.tuples(n + 1)) {
      if (!detail::covered(mu, t)) continue;
      ++rep.tuples_checked;
      const S v = interference(mu, t);
      if (!is_zero(v, tol)) {
        vanishes = false;
        rep.witness = t;
        rep.witness_value = v;
        break;
      }
    }
    if (vanishes) {
      rep.order = n;
      if (n == 0) rep.witness.clear();
      rep.summary = "consistent with order <= " + std::to_string(n) + " on sample set";
      return rep;
    }
  }
  rep.exceeds_cap = true;
  rep.summary = "order > " + std::to_string(n_max) + " on samples";
  return rep;
}

}  // namespace hom
