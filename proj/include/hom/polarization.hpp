#pragma once

// Polarization of order-n measures into totally symmetric multiadditive
// forms, the projection onto the top form, its diagonal section, and the
// full homogeneous decomposition of a measure in M_n.

#include "hom/interference.hpp"

#include <map>

namespace hom {

/// Largest polarization order and symmetric-table size accepted.
inline constexpr unsigned max_form_order = 6;
inline constexpr std::size_t max_form_entries = 20000;

/// Totally symmetric multiadditive functional of order n over a free
/// module of rank m, stored by its values on non-decreasing basis index
/// tuples and extended to arbitrary arguments by multiadditivity.
template <Scalar S>
class SymmetricForm {
 public:
  using Index = std::vector<std::size_t>;

  /// The zero form.
  SymmetricForm(unsigned order, std::size_t m) : order_(order), m_(m) {
    check_caps(order, m);
    for (auto& idx : multiset_tuples(m, order)) table_.emplace(std::move(idx), from_int<S>(0));
  }

  static std::size_t table_size(unsigned order, std::size_t m) { return binomial(m + order - 1, order); }

  static void check_caps(unsigned order, std::size_t m) {
    if (order < 1) throw InvalidArgument("symmetric form order must be >= 1");
    if (m < 1) throw InvalidArgument("symmetric form needs m >= 1");
    if (order > max_form_order)
      throw CapExceeded("decomposition too large: order " + std::to_string(order) + " exceeds " +
                        std::to_string(max_form_order));
    if (table_size(order, m) > max_form_entries)
      throw CapExceeded("decomposition too large: " + std::to_string(table_size(order, m)) +
                        " basis tuples exceed " + std::to_string(max_form_entries));
  }

  unsigned order() const { return order_; }
  std::size_t dimension() const { return m_; }
  const std::map<Index, S>& table() const { return table_; }

  /// Value on basis vectors e_{idx[0]}, ..., e_{idx[n-1]} in any order.
  const S& at(Index idx) const {
    std::sort(idx.begin(), idx.end());
    auto it = table_.find(idx);
    if (it == table_.end()) throw InvalidArgument("index tuple outside the form's basis");
    return it->second;
  }

  void set(Index idx, S value) {
    std::sort(idx.begin(), idx.end());
    auto it = table_.find(idx);
    if (it == table_.end()) throw InvalidArgument("index tuple outside the form's basis");
    it->second = std::move(value);
  }

  /// Multiadditive extension: sum over i_1..i_n of prod a_j[i_j] * value(i).
  S operator()(std::span<const GroupElement<S>> args) const {
    if (args.size() != order_)
      throw InvalidArgument("form of order " + std::to_string(order_) + " given " + std::to_string(args.size()) +
                            " arguments");
    for (const auto& a : args)
      if (a.size() != m_) throw DimensionMismatch(m_, a.size());
    Summation<S> sum;
    Index idx(order_);
    extend(args, 0, from_int<S>(1), idx, sum);
    return sum.value();
  }

  S operator()(const std::vector<GroupElement<S>>& args) const {
    return (*this)(std::span<const GroupElement<S>>(args));
  }

  /// Phi(x, ..., x) as a homogeneous polynomial of degree n in the coordinates.
  Polynomial<S> diagonal_polynomial() const {
    Polynomial<S> p(m_);
    for (const auto& [idx, v] : table_) {
      Monomial mono(m_, 0);
      for (auto i : idx) ++mono[i];
      // Number of distinct orderings of idx.
      std::uint64_t count = factorial(order_);
      for (auto e : mono) count /= factorial(e);
      p.add_term(mono, from_int<S>(static_cast<long long>(count)) * v);
    }
    return p;
  }

  S diagonal(const GroupElement<S>& x) const { return diagonal_polynomial()(x); }

  bool is_zero(Tolerance tol = {}) const {
    return std::all_of(table_.begin(), table_.end(), [&](const auto& e) { return hom::is_zero(e.second, tol); });
  }

  bool near(const SymmetricForm& o, Tolerance tol = {}) const {
    if (o.order_ != order_ || o.m_ != m_) return false;
    auto it = o.table_.begin();
    for (const auto& [idx, v] : table_) {
      if (!hom::near(v, it->second, tol)) return false;
      ++it;
    }
    return true;
  }

  friend bool operator==(const SymmetricForm& a, const SymmetricForm& b) {
    return a.order_ == b.order_ && a.m_ == b.m_ && a.table_ == b.table_;
  }

 private:
  void extend(std::span<const GroupElement<S>> args, std::size_t pos, const S& weight, Index& idx,
              Summation<S>& sum) const {
    if (pos == order_) {
      Index sorted = idx;
      std::sort(sorted.begin(), sorted.end());
      sum.add(weight * table_.at(sorted));
      return;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      const S& c = args[pos][i];
      if (c == from_int<S>(0)) continue;
      idx[pos] = i;
      extend(args, pos + 1, weight * c, idx, sum);
    }
  }

  unsigned order_;
  std::size_t m_;
  std::map<Index, S> table_;
};

/// Phi(a_1..a_n) = 1/(2^n n!) sum_{z in {+1,-1}^n} (prod z_i) mu(z_1 a_1 + ... + z_n a_n).
template <Scalar S>
S polarize(const Measure<S>& mu, unsigned n, std::span<const GroupElement<S>> args) {
  if (n < 1) throw InvalidArgument("polarization order must be >= 1");
  if (args.size() != n)
    throw InvalidArgument("polarization of order " + std::to_string(n) + " needs " + std::to_string(n) +
                          " arguments");
  if (n > max_interference_order) throw CapExceeded("polarization order too large");
  const std::size_t m = common_dimension(args);
  Summation<S> sum;
  for (std::uint64_t neg = 0; neg < (std::uint64_t{1} << n); ++neg) {
    auto x = GroupElement<S>::zero(m);
    for (unsigned i = 0; i < n; ++i) {
      if ((neg >> i) & 1u)
        x -= args[i];
      else
        x += args[i];
    }
    const S v = mu(x);
    sum.add(std::popcount(neg) % 2 == 0 ? v : -v);
  }
  const auto scale = static_cast<long long>((std::uint64_t{1} << n) * factorial(n));
  return sum.value() / from_int<S>(scale);
}

template <Scalar S>
S polarize(const Measure<S>& mu, unsigned n, const std::vector<GroupElement<S>>& args) {
  return polarize(mu, n, std::span<const GroupElement<S>>(args));
}

/// Tabulates the polarization of mu on all non-decreasing basis tuples.
template <Scalar S>
SymmetricForm<S> project(const Measure<S>& mu, unsigned n) {
  SymmetricForm<S> form(n, mu.dimension());
  const std::size_t m = mu.dimension();
  for (const auto& [idx, unused] : form.table()) {
    std::vector<GroupElement<S>> args;
    for (auto i : idx) args.push_back(GroupElement<S>::basis(m, i));
    form.set(idx, polarize(mu, n, args));
  }
  return form;
}

/// mu(x) = Phi(x, ..., x).
template <Scalar S>
Measure<S> section(const SymmetricForm<S>& phi) {
  return Measure<S>::polynomial(phi.diagonal_polynomial());
}

/// Components Phi_1..Phi_n of an order-n measure, lowest order first.
template <Scalar S>
struct Decomposition {
  std::vector<SymmetricForm<S>> components;
  std::vector<std::string> warnings;

  /// sum_k Phi_k(x, ..., x)
  S evaluate(const GroupElement<S>& x) const {
    Summation<S> sum;
    for (const auto& c : components) sum.add(c.diagonal(x));
    return sum.value();
  }

  Polynomial<S> polynomial() const {
    if (components.empty()) throw InvalidArgument("empty decomposition");
    Polynomial<S> p(components.front().dimension());
    for (const auto& c : components) p += c.diagonal_polynomial();
    return p;
  }

  Measure<S> reconstruction() const { return Measure<S>::polynomial(polynomial()); }
};

struct DecomposeOptions {
  bool allow_approx = false;
  Tolerance approx_tol{1e-8};
  std::uint64_t seed = 42;
  std::size_t random_probes = 32;
};

namespace detail {

/// Membership of `mu` in M_order on the deterministic probe family.
template <Scalar S>
bool in_measure_space(const Measure<S>& mu, unsigned order, const TupleSampler<S>& probes, Tolerance tol) {
  if (auto p = mu.polynomial_form(); p && scalar_traits<S>::exact)
    return p->is_zero() || (is_zero(p->constant_term(), tol) && p->degree() <= order);
  for (const auto& t : probes.tuples(order + 1)) {
    if (!covered(mu, t)) continue;
    if (!is_zero(interference(mu, t), tol)) return false;
  }
  return true;
}

}  // namespace detail

/// Peels off Phi_n = project(mu, n), recurses on mu - section(Phi_n) in M_{n-1}.
template <Scalar S>
Decomposition<S> decompose(const Measure<S>& mu, unsigned n, const DecomposeOptions& opts = {}) {
  if (n < 1) throw InvalidArgument("decomposition order must be >= 1");
  SymmetricForm<S>::check_caps(n, mu.dimension());
  Decomposition<S> out;
  Tolerance tol{};
  if constexpr (!scalar_traits<S>::exact) {
    if (!opts.allow_approx)
      throw InvalidArgument("decompose requires the exact backend unless approximate mode is enabled");
    tol = opts.approx_tol;
    out.warnings.push_back("approximate backend: repeated subtraction amplifies rounding error; tolerance " +
                           std::to_string(tol.abs));
  }
  const TupleSampler<S> probes(mu.dimension(), opts.seed, opts.random_probes);
  Measure<S> remainder = mu;
  std::vector<SymmetricForm<S>> top_down;
  for (unsigned k = n; k >= 1; --k) {
    auto phi = project(remainder, k);
    remainder = remainder - section(phi);
    top_down.push_back(std::move(phi));
    if (!detail::in_measure_space(remainder, k - 1, probes, tol))
      throw NotInMeasureSpace("input not in M_" + std::to_string(n) + ": remainder after removing the order-" +
                              std::to_string(k) + " component is not in M_" + std::to_string(k - 1));
  }
  out.components.assign(std::make_move_iterator(top_down.rbegin()), std::make_move_iterator(top_down.rend()));
  return out;
}

/// sum_{l=k}^{n} (-1)^{n-l} C(n+1-k, l-k); equals 1 for 1 <= k <= n.
inline Rational binomial_section_check(unsigned n, unsigned k) {
  if (k < 1 || k > n) throw InvalidArgument("binomial section check needs 1 <= k <= n");
  Rational sum(0);
  for (unsigned l = k; l <= n; ++l) {
    const Rational term(static_cast<long long>(binomial(n + 1 - k, l - k)));
    sum += ((n - l) % 2 == 0) ? term : Rational(-term);
  }
  return sum;
}

}  // namespace hom
