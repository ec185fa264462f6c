#pragma once

// Multi-slit toy experiment. One history per slit; the amplitude through
// slit j is exp(i k (|source - slit_j| + |slit_j - detector|)), normalized so
// the amplitude vector has unit norm. Probabilities of blocking
// configurations are values of the quantum measure on characteristic
// functions of the open slits.

#include "hom/interference.hpp"

#include <array>
#include <cmath>
#include <random>

namespace hom {

struct Point2 {
  double x = 0;
  double y = 0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline constexpr const char* phase_sum_model = "phase-sum";

/// Largest slit count run_sum_rules accepts.
inline constexpr std::size_t max_slits = 6;

struct SlitScenario {
  Point2 source;
  std::vector<Point2> slits;
  Point2 detector;
  double wavenumber = 1.0;
  std::string model = phase_sum_model;

  friend bool operator==(const SlitScenario&, const SlitScenario&) = default;

  void validate() const {
    auto finite = [](const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); };
    if (slits.empty()) throw InvalidArgument("scenario needs at least one slit");
    if (slits.size() > max_histories) throw CapExceeded("too many slits");
    if (!finite(source) || !finite(detector)) throw InvalidArgument("source/detector position is not finite");
    for (const auto& s : slits)
      if (!finite(s)) throw InvalidArgument("slit position is not finite");
    if (!(wavenumber > 0) || !std::isfinite(wavenumber)) throw InvalidArgument("wavenumber must be positive");
    if (model != phase_sum_model) throw InvalidArgument("unknown amplitude model '" + model + "'");
    constexpr double eps = 1e-12;
    for (const auto& s : slits)
      if (distance(s, source) < eps || distance(s, detector) < eps)
        throw InvalidArgument("degenerate geometry: slit coincides with source or detector");
  }
};

/// Unit-norm per-slit amplitudes.
inline std::vector<Complex> slit_amplitudes(const SlitScenario& s) {
  s.validate();
  std::vector<Complex> z;
  z.reserve(s.slits.size());
  for (const auto& slit : s.slits) {
    const double path = distance(s.source, slit) + distance(slit, s.detector);
    z.push_back(std::polar(1.0, s.wavenumber * path));
  }
  return normalized(std::move(z));
}

inline Measure<Complex> build_measure(const SlitScenario& s) {
  return quantum_measure_from_amplitudes(slit_amplitudes(s));
}

struct SlitTerm {
  std::vector<std::size_t> slits;
  double value;
};

struct SumRuleReport {
  std::size_t k = 0;
  double tolerance = 1e-9;
  /// mu(chi_S) for every open-slit configuration S, in bitmask order (P_0 first).
  std::vector<SlitTerm> probabilities;
  std::vector<SlitTerm> i2, i3, i4;
  double max_i2 = 0, max_i3 = 0, max_i4 = 0;
  /// max |I_3(A,B,C) - (I_2(A u B, C) - I_2(A,C) - I_2(B,C))| over ordered triples.
  double recursion_residual = 0;
  bool interference_present = false;
  bool i3_vanishes = true;
  bool i4_vanishes = true;
};

namespace detail {

inline void collect_slit_terms(const Measure<Complex>& mu, std::size_t k, std::size_t order,
                               std::vector<SlitTerm>& out, double& max_abs) {
  std::vector<std::size_t> pick(order);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
    if (pos == order) {
      std::vector<GroupElement<Complex>> args;
      for (auto i : pick) args.push_back(GroupElement<Complex>::basis(k, i));
      const double v = interference(mu, args).real();
      out.push_back({pick, v});
      max_abs = std::max(max_abs, std::fabs(v));
      return;
    }
    for (std::size_t i = start; i < k; ++i) {
      pick[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace detail

inline SumRuleReport run_sum_rules(const SlitScenario& s, double tol = 1e-9) {
  const std::size_t k = s.slits.size();
  if (k < 2 || k > max_slits)
    throw InvalidArgument("sum-rule run needs 2 <= k <= " + std::to_string(max_slits) + " slits, got " +
                          std::to_string(k));
  const auto mu = build_measure(s);
  SumRuleReport rep;
  rep.k = k;
  rep.tolerance = tol;
  for (const auto& mask : SubsetMask::all(k))
    rep.probabilities.push_back({mask.indices(), mu(characteristic_function<Complex>(mask)).real()});
  detail::collect_slit_terms(mu, k, 2, rep.i2, rep.max_i2);
  if (k >= 3) detail::collect_slit_terms(mu, k, 3, rep.i3, rep.max_i3);
  if (k >= 4) detail::collect_slit_terms(mu, k, 4, rep.i4, rep.max_i4);

  auto chi = [&](std::initializer_list<std::size_t> idx) {
    auto g = GroupElement<Complex>::zero(k);
    for (auto i : idx) g += GroupElement<Complex>::basis(k, i);
    return g;
  };
  auto i2 = [&](const GroupElement<Complex>& a, const GroupElement<Complex>& b) {
    return interference(mu, std::vector{a, b}).real();
  };
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c) {
        if (a == b || b == c || a == c) continue;
        const double lhs = interference(mu, std::vector{chi({a}), chi({b}), chi({c})}).real();
        const double rhs = i2(chi({a, b}), chi({c})) - i2(chi({a}), chi({c})) - i2(chi({b}), chi({c}));
        rep.recursion_residual = std::max(rep.recursion_residual, std::fabs(lhs - rhs));
      }

  rep.interference_present = rep.max_i2 > tol;
  rep.i3_vanishes = rep.max_i3 < tol;
  rep.i4_vanishes = rep.max_i4 < tol;
  return rep;
}

/// Random geometry: source below the slit screen (y = 0), detector above,
/// slits at distinct random abscissae, random wavenumber.
inline SlitScenario random_scenario(std::mt19937_64& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  SlitScenario s;
  s.source = {-1.0 + 2.0 * u(rng), -(1.0 + 4.0 * u(rng))};
  s.detector = {-1.0 + 2.0 * u(rng), 1.0 + 4.0 * u(rng)};
  for (std::size_t j = 0; j < k; ++j) s.slits.push_back({-2.0 + 4.0 * u(rng), 0.0});
  s.wavenumber = 5.0 + 45.0 * u(rng);
  return s;
}

}  // namespace hom
