#pragma once

// Sparse multivariate polynomials in the additive coordinates g_i of G.

#include "hom/core.hpp"

#include <map>
#include <numeric>
#include <optional>

namespace hom {

/// Exponent vector, one entry per variable.
using Monomial = std::vector<unsigned>;

inline unsigned total_degree(const Monomial& mono) { return std::accumulate(mono.begin(), mono.end(), 0u); }

template <Scalar S>
class Polynomial {
 public:
  explicit Polynomial(std::size_t vars = 0) : vars_(vars) {}

  static Polynomial constant(std::size_t vars, const S& c) {
    Polynomial p(vars);
    p.add_term(Monomial(vars, 0), c);
    return p;
  }

  /// The coordinate functional g -> g_i.
  static Polynomial variable(std::size_t vars, std::size_t i) {
    if (i >= vars) throw InvalidArgument("variable index out of range");
    Monomial mono(vars, 0);
    mono[i] = 1;
    Polynomial p(vars);
    p.add_term(mono, from_int<S>(1));
    return p;
  }

  /// g -> sum_i coeffs[i] * g_i.
  static Polynomial linear(std::span<const S> coeffs) {
    Polynomial p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) p += coeffs[i] * variable(coeffs.size(), i);
    return p;
  }

  std::size_t variables() const { return vars_; }
  const std::map<Monomial, S>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Total degree; 0 for constants and for the zero polynomial.
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [mono, c] : terms_) d = std::max(d, total_degree(mono));
    return d;
  }

  S constant_term() const {
    auto it = terms_.find(Monomial(vars_, 0));
    return it == terms_.end() ? from_int<S>(0) : it->second;
  }

  S coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? from_int<S>(0) : it->second;
  }

  void add_term(const Monomial& mono, const S& c) {
    if (mono.size() != vars_) throw DimensionMismatch(vars_, mono.size());
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (!inserted) it->second += c;
    if (it->second == from_int<S>(0)) terms_.erase(it);
  }

  /// Terms of total degree exactly d.
  Polynomial homogeneous_part(unsigned d) const {
    Polynomial p(vars_);
    for (const auto& [mono, c] : terms_)
      if (total_degree(mono) == d) p.terms_.emplace(mono, c);
    return p;
  }

  S eval(std::span<const S> x) const {
    if (x.size() != vars_) throw DimensionMismatch(vars_, x.size());
    Summation<S> sum;
    for (const auto& [mono, c] : terms_) {
      S term = c;
      for (std::size_t i = 0; i < vars_; ++i)
        for (unsigned e = 0; e < mono[i]; ++e) term = term * x[i];
      sum.add(term);
    }
    return sum.value();
  }

  S operator()(const GroupElement<S>& g) const { return eval(g.coeffs()); }

  /// Substitutes x_j -> sum_t images[j][t] * y_t, giving a polynomial in new_vars variables.
  Polynomial substitute_linear(const std::vector<std::vector<S>>& images, std::size_t new_vars) const {
    if (images.size() != vars_) throw DimensionMismatch(vars_, images.size());
    std::vector<Polynomial> lin;
    for (const auto& row : images) {
      if (row.size() != new_vars) throw DimensionMismatch(new_vars, row.size());
      lin.push_back(linear(row));
    }
    Polynomial out(new_vars);
    for (const auto& [mono, c] : terms_) {
      Polynomial term = constant(new_vars, c);
      for (std::size_t j = 0; j < vars_; ++j)
        for (unsigned e = 0; e < mono[j]; ++e) term *= lin[j];
      out += term;
    }
    return out;
  }

  /// Rescales each variable: x_i -> w_i * x_i.
  Polynomial scale_variables(std::span<const S> w) const {
    if (w.size() != vars_) throw DimensionMismatch(vars_, w.size());
    Polynomial out(vars_);
    for (const auto& [mono, c] : terms_) {
      S coeff = c;
      for (std::size_t i = 0; i < vars_; ++i)
        for (unsigned e = 0; e < mono[i]; ++e) coeff = coeff * w[i];
      out.add_term(mono, coeff);
    }
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    require_same(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    require_same(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) {
    require_same(o);
    Polynomial out(vars_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) {
        Monomial mono(vars_);
        for (std::size_t i = 0; i < vars_; ++i) mono[i] = ma[i] + mb[i];
        out.add_term(mono, ca * cb);
      }
    *this = std::move(out);
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator-(const Polynomial& a) { return from_int<S>(-1) * a; }
  friend Polynomial operator*(const S& s, const Polynomial& a) {
    Polynomial out(a.vars_);
    for (const auto& [mono, c] : a.terms_) out.add_term(mono, s * c);
    return out;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  Polynomial pow(unsigned e) const {
    Polynomial out = constant(vars_, from_int<S>(1));
    for (unsigned i = 0; i < e; ++i) out *= *this;
    return out;
  }

  bool near_zero(Tolerance tol) const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return hom::is_zero(t.second, tol); });
  }

 private:
  void require_same(const Polynomial& o) const {
    if (o.vars_ != vars_) throw DimensionMismatch(vars_, o.vars_);
  }

  std::size_t vars_;
  std::map<Monomial, S> terms_;
};

}  // namespace hom
