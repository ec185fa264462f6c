#pragma once

// Hopf operations on Fun(G), represented by their evaluations:
//   coproduct  (Df)(g, h) = f(g + h)
//   counit     e(f)       = f(0)
//   antipode   (Sf)(g)    = f(-g)
// and coderivatives at the identity
//   (L^k f)(e)(g_1..g_k) = sum_{S subset {1..k}} (-1)^{k-|S|} f(sum_{i in S} g_i),
// which include the empty-set term (-1)^k f(0). On measures (f(0) = 0)
// they coincide with I_k.

#include "hom/interference.hpp"

#include <functional>

namespace hom {

/// Function of r group arguments. Arity-1 functions are elements of Fun(G);
/// higher arities are images of iterated coproducts and coderivatives.
template <Scalar S>
class GroupFunction {
 public:
  using Evaluator = std::function<S(std::span<const GroupElement<S>>)>;

  GroupFunction(std::size_t m, std::size_t arity, Evaluator fn)
      : m_(m), arity_(arity), fn_(std::move(fn)) {
    if (arity_ < 1) throw InvalidArgument("group function arity must be >= 1");
  }

  static GroupFunction from_measure(const Measure<S>& mu) {
    GroupFunction f(mu.dimension(), 1, [mu](std::span<const GroupElement<S>> a) { return mu(a[0]); });
    f.poly_ = mu.polynomial_form();
    return f;
  }

  /// Arbitrary polynomial; a nonzero constant term is allowed here.
  static GroupFunction from_polynomial(const Polynomial<S>& p) {
    GroupFunction f(p.variables(), 1, [p](std::span<const GroupElement<S>> a) { return p(a[0]); });
    f.poly_ = p;
    return f;
  }

  static GroupFunction constant(std::size_t m, const S& c) {
    return from_polynomial(Polynomial<S>::constant(m, c));
  }

  std::size_t dimension() const { return m_; }
  std::size_t arity() const { return arity_; }
  const std::optional<Polynomial<S>>& polynomial() const { return poly_; }

  S operator()(std::span<const GroupElement<S>> args) const {
    if (args.size() != arity_)
      throw InvalidArgument("function of arity " + std::to_string(arity_) + " given " +
                            std::to_string(args.size()) + " arguments");
    for (const auto& a : args)
      if (a.size() != m_) throw DimensionMismatch(m_, a.size());
    return fn_(args);
  }

  S operator()(const GroupElement<S>& g) const { return (*this)(std::span<const GroupElement<S>>(&g, 1)); }

  S operator()(const std::vector<GroupElement<S>>& args) const {
    return (*this)(std::span<const GroupElement<S>>(args));
  }

 private:
  std::size_t m_;
  std::size_t arity_;
  Evaluator fn_;
  std::optional<Polynomial<S>> poly_;
};

namespace detail {

template <Scalar S>
void require_unary(const GroupFunction<S>& f) {
  if (f.arity() != 1) throw InvalidArgument("operation expects an arity-1 function");
}

}  // namespace detail

/// r-fold coproduct: (g_1..g_r) -> f(g_1 + ... + g_r).
template <Scalar S>
GroupFunction<S> iterated_coproduct(const GroupFunction<S>& f, std::size_t r) {
  detail::require_unary(f);
  const std::size_t m = f.dimension();
  return GroupFunction<S>(m, r, [f, m](std::span<const GroupElement<S>> a) {
    auto sum = GroupElement<S>::zero(m);
    for (const auto& g : a) sum += g;
    return f(sum);
  });
}

template <Scalar S>
GroupFunction<S> coproduct(const GroupFunction<S>& f) {
  return iterated_coproduct(f, 2);
}

template <Scalar S>
S coproduct_eval(const GroupFunction<S>& f, const GroupElement<S>& g, const GroupElement<S>& h) {
  detail::require_unary(f);
  return f(g + h);
}

template <Scalar S>
S counit(const GroupFunction<S>& f) {
  detail::require_unary(f);
  return f(GroupElement<S>::zero(f.dimension()));
}

template <Scalar S>
GroupFunction<S> antipode(const GroupFunction<S>& f) {
  detail::require_unary(f);
  if (f.polynomial()) {
    std::vector<S> minus(f.dimension(), from_int<S>(-1));
    return GroupFunction<S>::from_polynomial(f.polynomial()->scale_variables(minus));
  }
  return GroupFunction<S>(f.dimension(), 1, [f](std::span<const GroupElement<S>> a) { return f(-a[0]); });
}

template <Scalar S>
S antipode_eval(const GroupFunction<S>& f, const GroupElement<S>& g) {
  detail::require_unary(f);
  return f(-g);
}

template <Scalar S>
S coderivative_at_identity(const GroupFunction<S>& f, unsigned k, std::span<const GroupElement<S>> args) {
  detail::require_unary(f);
  if (k < 1) throw InvalidArgument("coderivative order must be >= 1");
  if (args.size() != k)
    throw InvalidArgument("coderivative of order " + std::to_string(k) + " needs " + std::to_string(k) +
                          " arguments");
  if (k > max_interference_order) throw CapExceeded("coderivative order too large");
  const std::size_t m = f.dimension();
  if (common_dimension(args) != m) throw DimensionMismatch(m, args.front().size());
  const auto sums = all_subset_sums(args, m);
  Summation<S> total;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    const auto size = static_cast<unsigned>(std::popcount(mask));
    const S v = f(sums[mask]);
    total.add((k - size) % 2 == 0 ? v : -v);
  }
  return total.value();
}

template <Scalar S>
S coderivative_at_identity(const GroupFunction<S>& f, unsigned k, const std::vector<GroupElement<S>>& args) {
  return coderivative_at_identity(f, k, std::span<const GroupElement<S>>(args));
}

/// (L^k f)(e) as an arity-k function.
template <Scalar S>
GroupFunction<S> coderivative(const GroupFunction<S>& f, unsigned k) {
  detail::require_unary(f);
  return GroupFunction<S>(f.dimension(), k, [f, k](std::span<const GroupElement<S>> a) {
    return coderivative_at_identity(f, k, a);
  });
}

/// Symbolic (L^k p)(e) as a polynomial in k*m variables; variable j*m + i
/// is coordinate i of argument j.
template <Scalar S>
Polynomial<S> coderivative_polynomial(const Polynomial<S>& p, unsigned k) {
  const std::size_t m = p.variables();
  Polynomial<S> out(k * m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::vector<std::vector<S>> images(m, std::vector<S>(k * m, from_int<S>(0)));
    for (unsigned j = 0; j < k; ++j)
      if ((mask >> j) & 1u)
        for (std::size_t i = 0; i < m; ++i) images[i][j * m + i] = from_int<S>(1);
    const auto size = static_cast<unsigned>(std::popcount(mask));
    const S sign = from_int<S>((k - size) % 2 == 0 ? 1 : -1);
    out += sign * p.substitute_linear(images, k * m);
  }
  return out;
}

struct VanishingEvidence {
  unsigned order;
  bool symbolic;
  std::size_t tuples_checked;
};

template <Scalar S>
struct PrimitivityReport {
  unsigned order = 0;
  Evidence evidence = Evidence::sampled;
  /// True when nonzero coderivatives were seen up to k_max, so vanishing
  /// above the reported order is not established.
  bool inconclusive = false;
  std::vector<GroupElement<S>> witness;
  S witness_value = from_int<S>(0);
  std::vector<VanishingEvidence> vanishing;
  std::string summary;
};

/// k-primitive: (L^r f)(e) = 0 for all r > k while (L^k f)(e) != 0.
template <Scalar S>
PrimitivityReport<S> classify_primitivity(const GroupFunction<S>& f, unsigned k_max, const TupleSampler<S>& samples,
                                          Tolerance tol = {}) {
  detail::require_unary(f);
  if (k_max < 1) throw InvalidArgument("k_max must be at least 1");
  PrimitivityReport<S> rep;

  if (f.polynomial() && scalar_traits<S>::exact) {
    const Polynomial<S>& p = *f.polynomial();
    const Polynomial<S> shifted = p - Polynomial<S>::constant(p.variables(), p.constant_term());
    if (shifted.is_zero()) throw NoWitness("0-primitive or vanishing on samples: function is constant");
    const unsigned k = shifted.degree();
    rep.evidence = Evidence::exact;
    rep.order = k;
    rep.witness = detail::top_monomial_witness(shifted);
    rep.witness_value = coderivative_at_identity(f, k, rep.witness);
    if (is_zero(rep.witness_value, tol)) throw Error("internal: top-monomial witness evaluated to zero");
    // L^{r+1} is a combination of L^r at summed arguments, so vanishing at
    // k+1 gives vanishing at every higher order.
    if (!coderivative_polynomial(p, k + 1).is_zero())
      throw Error("internal: symbolic coderivative of order " + std::to_string(k + 1) + " does not vanish");
    rep.vanishing.push_back({k + 1, true, 0});
    rep.summary = std::to_string(k) + "-primitive (exact: polynomial of degree " + std::to_string(k) +
                  " in the additive coordinates)";
    return rep;
  }

  std::optional<unsigned> highest_nonzero;
  std::vector<VanishingEvidence> checked;
  for (unsigned r = 1; r <= k_max; ++r) {
    std::size_t count = 0;
    for (const auto& t : samples.tuples(r)) {
      ++count;
      const S v = coderivative_at_identity(f, r, t);
      if (!is_zero(v, tol)) {
        highest_nonzero = r;
        rep.witness = t;
        rep.witness_value = v;
        break;
      }
    }
    checked.push_back({r, false, count});
  }
  if (!highest_nonzero)
    throw NoWitness("0-primitive or vanishing on samples: no nonzero coderivative up to order " +
                    std::to_string(k_max));
  rep.order = *highest_nonzero;
  for (const auto& c : checked)
    if (c.order > rep.order) rep.vanishing.push_back(c);
  rep.inconclusive = rep.order == k_max;
  rep.summary = rep.inconclusive
                    ? "nonzero coderivative at order " + std::to_string(k_max) +
                          " on samples; vanishing above k_max not established"
                    : "consistent with " + std::to_string(rep.order) + "-primitive on sample set";
  return rep;
}

}  // namespace hom
