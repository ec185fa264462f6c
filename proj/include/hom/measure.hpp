#pragma once

// Measures on G: black boxes (lookup table or closure), explicit
// polynomials in the additive coordinates, and quantum amplitude measures
// mu(g) = |sum_i g_i z_i|^2. Measures are immutable and cheap to copy.

#include "hom/core.hpp"
#include "hom/polynomial.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <variant>

namespace hom {

enum class MeasureKind { table, closure, polynomial, quantum };

inline const char* to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::table: return "table";
    case MeasureKind::closure: return "closure";
    case MeasureKind::polynomial: return "polynomial";
    case MeasureKind::quantum: return "quantum";
  }
  return "?";
}

template <Scalar S>
class Measure {
 public:
  struct TableEntry {
    GroupElement<S> point;
    S value;
  };
  using Function = std::function<S(const GroupElement<S>&)>;

  /// Table mode: defined only at the listed points. Duplicate points must agree.
  static Measure table(std::size_t m, std::vector<TableEntry> entries, Tolerance tol = {}) {
    for (const auto& e : entries)
      if (e.point.size() != m) throw DimensionMismatch(m, e.point.size());
    Table t{std::move(entries), tol};
    return Measure(m, std::move(t));
  }

  /// Closure mode: total evaluator.
  static Measure function(std::size_t m, Function fn) { return Measure(m, Closure{std::move(fn)}); }

  static Measure polynomial(Polynomial<S> p) {
    const auto m = p.variables();
    return Measure(m, std::move(p));
  }

  /// mu(g) = |<g, z>|^2. Amplitudes are used as given; see normalized().
  static Measure quantum(std::vector<S> amplitudes) {
    const auto m = amplitudes.size();
    if (m == 0) throw InvalidArgument("quantum measure needs at least one amplitude");
    return Measure(m, Quantum{std::move(amplitudes)});
  }

  static Measure zero(std::size_t m) { return polynomial(Polynomial<S>(m)); }

  std::size_t dimension() const { return m_; }

  MeasureKind kind() const {
    return std::visit(
        [](const auto& r) {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, Table>) return MeasureKind::table;
          else if constexpr (std::is_same_v<R, Closure>) return MeasureKind::closure;
          else if constexpr (std::is_same_v<R, Polynomial<S>>) return MeasureKind::polynomial;
          else return MeasureKind::quantum;
        },
        *rep_);
  }

  S operator()(const GroupElement<S>& g) const { return eval(g); }

  S eval(const GroupElement<S>& g) const {
    if (g.size() != m_) throw DimensionMismatch(m_, g.size());
    return std::visit([&](const auto& r) { return eval_rep(r, g); }, *rep_);
  }

  /// True when eval(g) will not throw UnsampledPoint.
  bool covers(const GroupElement<S>& g) const {
    if (const auto* t = std::get_if<Table>(rep_.get())) return find(*t, g) != nullptr;
    return true;
  }

  const Polynomial<S>* as_polynomial() const { return std::get_if<Polynomial<S>>(rep_.get()); }

  const std::vector<S>* amplitudes() const {
    const auto* q = std::get_if<Quantum>(rep_.get());
    return q ? &q->amplitudes : nullptr;
  }

  const std::vector<TableEntry>* table_entries() const {
    const auto* t = std::get_if<Table>(rep_.get());
    return t ? &t->entries : nullptr;
  }

  /// Exact polynomial representation when one exists: the polynomial
  /// variant itself, or a quantum measure over a real field, where
  /// |sum g_i z_i|^2 = sum_ij z_i z_j g_i g_j.
  std::optional<Polynomial<S>> polynomial_form() const {
    if (const auto* p = as_polynomial()) return *p;
    if constexpr (scalar_traits<S>::real_field) {
      if (const auto* z = amplitudes()) {
        auto lin = Polynomial<S>::linear(*z);
        return lin * lin;
      }
    }
    return std::nullopt;
  }

  friend Measure operator+(const Measure& a, const Measure& b) { return combine(a, b, from_int<S>(1)); }
  friend Measure operator-(const Measure& a, const Measure& b) { return combine(a, b, from_int<S>(-1)); }

  friend Measure operator*(const S& s, const Measure& a) {
    if (auto p = a.polynomial_form()) return polynomial(s * *p);
    return function(a.m_, [s, a](const GroupElement<S>& g) { return s * a.eval(g); });
  }

 private:
  struct Table {
    std::vector<TableEntry> entries;
    Tolerance tol;
  };
  struct Closure {
    Function fn;
  };
  struct Quantum {
    std::vector<S> amplitudes;
  };
  using Rep = std::variant<Table, Closure, Polynomial<S>, Quantum>;

  Measure(std::size_t m, Rep rep) : m_(m), rep_(std::make_shared<const Rep>(std::move(rep))) {}

  static const S* find(const Table& t, const GroupElement<S>& g) {
    for (const auto& e : t.entries) {
      bool same = true;
      for (std::size_t i = 0; i < g.size() && same; ++i) same = near(e.point[i], g[i], t.tol);
      if (same) return &e.value;
    }
    return nullptr;
  }

  static S eval_rep(const Table& t, const GroupElement<S>& g) {
    if (const S* v = find(t, g)) return *v;
    throw UnsampledPoint("measure table has no entry for the requested point");
  }
  static S eval_rep(const Closure& c, const GroupElement<S>& g) { return c.fn(g); }
  static S eval_rep(const Polynomial<S>& p, const GroupElement<S>& g) { return p(g); }
  static S eval_rep(const Quantum& q, const GroupElement<S>& g) {
    Summation<S> amp;
    for (std::size_t i = 0; i < g.size(); ++i) amp.add(g[i] * q.amplitudes[i]);
    return scalar_traits<S>::norm(amp.value());
  }

  static Measure combine(const Measure& a, const Measure& b, const S& sign) {
    if (a.m_ != b.m_) throw DimensionMismatch(a.m_, b.m_);
    auto pa = a.polynomial_form();
    auto pb = b.polynomial_form();
    if (pa && pb) return polynomial(*pa + sign * *pb);
    return function(a.m_, [a, b, sign](const GroupElement<S>& g) { return a.eval(g) + sign * b.eval(g); });
  }

  std::size_t m_;
  std::shared_ptr<const Rep> rep_;
};

/// Quantum amplitude measure. Over a real field the measure is (sum g_i z_i)^2.
template <Scalar S>
Measure<S> quantum_measure_from_amplitudes(std::vector<S> z) {
  return Measure<S>::quantum(std::move(z));
}

/// Rescales an amplitude vector to unit 2-norm (approximate backend only).
inline std::vector<Complex> normalized(std::vector<Complex> z) {
  double n2 = 0;
  for (const auto& a : z) n2 += std::norm(a);
  if (n2 == 0) throw InvalidArgument("cannot normalize the zero amplitude vector");
  const double s = 1.0 / std::sqrt(n2);
  for (auto& a : z) a *= s;
  return z;
}

/// Checks mu(a_1+...+a_{n+1}) = sum_{1<=|S|<=n} (-1)^{n-|S|} mu(sum_{i in S} a_i).
template <Scalar S>
bool check_measure_identity(const Measure<S>& mu, unsigned n, std::span<const GroupElement<S>> args,
                            Tolerance tol = {}) {
  if (n < 1) throw InvalidArgument("measure identity needs order n >= 1");
  if (args.size() != n + 1)
    throw InvalidArgument("order-" + std::to_string(n) + " identity needs " + std::to_string(n + 1) +
                          " arguments, got " + std::to_string(args.size()));
  if (n + 1 > 16) throw CapExceeded("identity order above 15");
  const std::size_t m = common_dimension(args);
  const auto sums = all_subset_sums(args, m);
  const std::uint64_t full = (std::uint64_t{1} << (n + 1)) - 1;
  Summation<S> rhs;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    const auto size = static_cast<unsigned>(std::popcount(mask));
    const S v = mu(sums[mask]);
    rhs.add(((n - size) % 2 == 0) ? v : -v);
  }
  return near(mu(sums[full]), rhs.value(), tol);
}

template <Scalar S>
bool check_measure_identity(const Measure<S>& mu, unsigned n, const std::vector<GroupElement<S>>& args,
                            Tolerance tol = {}) {
  return check_measure_identity(mu, n, std::span<const GroupElement<S>>(args), tol);
}

/// even(a) = (mu(a)+mu(-a))/2, odd(a) = (mu(a)-mu(-a))/2.
template <Scalar S>
struct ParitySplit {
  Measure<S> even;
  Measure<S> odd;
};

template <Scalar S>
ParitySplit<S> parity_split(const Measure<S>& mu) {
  const std::size_t m = mu.dimension();
  if (auto p = mu.polynomial_form()) {
    Polynomial<S> even(m), odd(m);
    for (const auto& [mono, c] : p->terms()) (total_degree(mono) % 2 == 0 ? even : odd).add_term(mono, c);
    return {Measure<S>::polynomial(std::move(even)), Measure<S>::polynomial(std::move(odd))};
  }
  const S half = from_int<S>(1) / from_int<S>(2);
  auto even = Measure<S>::function(m, [mu, half](const GroupElement<S>& a) { return half * (mu(a) + mu(-a)); });
  auto odd = Measure<S>::function(m, [mu, half](const GroupElement<S>& a) { return half * (mu(a) - mu(-a)); });
  return {std::move(even), std::move(odd)};
}

/// Bimodule action: (x mu y)(a) = mu(y a x), with the algebra of functions
/// on H acting by pointwise multiplication.
template <Scalar S>
Measure<S> bimodule_action(const GroupElement<S>& x, const Measure<S>& mu, const GroupElement<S>& y) {
  const std::size_t m = mu.dimension();
  if (x.size() != m) throw DimensionMismatch(m, x.size());
  if (y.size() != m) throw DimensionMismatch(m, y.size());
  const GroupElement<S> w = y.pointwise(x);
  if (const auto* p = mu.as_polynomial()) return Measure<S>::polynomial(p->scale_variables(w.coeffs()));
  if (const auto* z = mu.amplitudes()) {
    std::vector<S> scaled(m);
    for (std::size_t i = 0; i < m; ++i) scaled[i] = w[i] * (*z)[i];
    return Measure<S>::quantum(std::move(scaled));
  }
  return Measure<S>::function(m, [mu, y, x](const GroupElement<S>& a) { return mu(y.pointwise(a).pointwise(x)); });
}

}  // namespace hom
