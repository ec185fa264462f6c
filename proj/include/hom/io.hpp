#pragma once

// JSON encodings. Exact rationals are strings "p/q"; complex numbers are
// [re, im] pairs (strings for the Gaussian backend, doubles for approx).
// Every reader reports failures as ParseError with a JSON-pointer location.

#include "hom/hopf.hpp"
#include "hom/polarization.hpp"
#include "hom/slits.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace hom::io {

using json = nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw ParseError((path.empty() ? std::string("/") : path) + ": " + what);
}

inline const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

/// Shortest decimal text that round-trips the double.
inline std::string shortest_decimal(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline Rational read_rational(const json& j, const std::string& path) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_float()) {
      const double v = j.get<double>();
      if (!std::isfinite(v)) fail(path, "non-finite number");
      return parse_rational(shortest_decimal(v));
    }
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(path, "expected a number or rational string");
}

template <Scalar S>
S read_scalar(const json& j, const std::string& path) {
  if constexpr (std::is_same_v<S, Complex>) {
    auto num = [&](const json& v, const std::string& p) -> double {
      if (v.is_number()) return v.get<double>();
      if (v.is_string()) return static_cast<double>(read_rational(v, p));
      fail(p, "expected a number");
    };
    if (j.is_array()) {
      if (j.size() != 2) fail(path, "complex value must be [re, im]");
      return {num(j[0], child(path, 0)), num(j[1], child(path, 1))};
    }
    return {num(j, path), 0.0};
  } else {
    if (j.is_array()) {
      if (j.size() != 2) fail(path, "complex value must be [re, im]");
      const Rational re = read_rational(j[0], child(path, 0));
      const Rational im = read_rational(j[1], child(path, 1));
      try {
        return scalar_traits<S>::from_parts(re, im);
      } catch (const std::invalid_argument& e) {
        fail(path, e.what());
      }
    }
    return scalar_traits<S>::from_rational(read_rational(j, path));
  }
}

inline json to_json(const Rational& r) { return to_string(r); }
inline json to_json(const GaussianRational& g) { return json::array({to_string(g.re), to_string(g.im)}); }
inline json to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

template <Scalar S>
json to_json(const GroupElement<S>& g) {
  json coeffs = json::array();
  for (const auto& c : g.coeffs()) coeffs.push_back(to_json(c));
  return {{"coeffs", coeffs}};
}

/// {"coeffs": [...]}, a bare coefficient array, or {"subset": [labels]}.
template <Scalar S>
GroupElement<S> read_group_element(const json& j, const HistorySpace& space, const std::string& path) {
  const json* coeffs = nullptr;
  if (j.is_array()) {
    coeffs = &j;
  } else if (j.is_object() && j.contains("subset")) {
    const json& sub = j["subset"];
    if (!sub.is_array()) fail(child(path, "subset"), "expected a label list");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < sub.size(); ++i) {
      if (!sub[i].is_string()) fail(child(child(path, "subset"), i), "expected a label string");
      labels.push_back(sub[i].get<std::string>());
    }
    try {
      return characteristic_function<S>(SubsetMask::from_labels(space, labels));
    } catch (const Error& e) {
      fail(child(path, "subset"), e.what());
    }
  } else {
    coeffs = &field(j, "coeffs", path);
  }
  const std::string cpath = j.is_array() ? path : child(path, "coeffs");
  if (!coeffs->is_array()) fail(cpath, "expected an array");
  if (coeffs->size() != space.size())
    fail(cpath, "expected " + std::to_string(space.size()) + " coefficients, got " + std::to_string(coeffs->size()));
  std::vector<S> c;
  for (std::size_t i = 0; i < coeffs->size(); ++i) c.push_back(read_scalar<S>((*coeffs)[i], child(cpath, i)));
  return GroupElement<S>(std::move(c));
}

inline json to_json(const SubsetMask& s, const HistorySpace& space) { return s.labels(space); }

/// Argument lists: a bare array or {"args": [...]}.
template <Scalar S>
std::vector<GroupElement<S>> read_args(const json& j, const HistorySpace& space) {
  const json& arr = j.is_array() ? j : field(j, "args", "");
  const std::string base = j.is_array() ? "" : "/args";
  if (!arr.is_array()) fail(base, "expected an array of group elements");
  std::vector<GroupElement<S>> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(read_group_element<S>(arr[i], space, child(base, i)));
  return out;
}

/// A measure (or, for --fn inputs, any polynomial function) together with
/// its history space.
template <Scalar S>
struct MeasureSpec {
  HistorySpace space;
  Measure<S> measure;
};

inline HistorySpace read_space(const json& j) {
  const json& mj = field(j, "m", "");
  if (!mj.is_number_integer() || mj.get<long long>() < 1) fail("/m", "expected a positive integer");
  const auto m = static_cast<std::size_t>(mj.get<long long>());
  try {
    if (j.contains("labels")) {
      const json& lj = j["labels"];
      if (!lj.is_array()) fail("/labels", "expected an array of strings");
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < lj.size(); ++i) {
        if (!lj[i].is_string()) fail(child("/labels", i), "expected a string");
        labels.push_back(lj[i].get<std::string>());
      }
      if (labels.size() != m) fail("/labels", "expected " + std::to_string(m) + " labels");
      return HistorySpace(std::move(labels));
    }
    return HistorySpace::numbered(m);
  } catch (const CapExceeded&) {
    throw;
  } catch (const InvalidArgument& e) {
    fail("/labels", e.what());
  }
}

template <Scalar S>
Polynomial<S> read_polynomial(const json& j, std::size_t m) {
  const json& terms = field(j, "terms", "");
  if (!terms.is_array()) fail("/terms", "expected an array");
  Polynomial<S> p(m);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string tp = child("/terms", t);
    const json& mono = field(terms[t], "monomial", tp);
    if (!mono.is_array() || mono.size() != m)
      fail(child(tp, "monomial"), "expected " + std::to_string(m) + " exponents");
    Monomial e;
    for (std::size_t i = 0; i < m; ++i) {
      if (!mono[i].is_number_unsigned()) fail(child(child(tp, "monomial"), i), "expected a non-negative integer");
      e.push_back(mono[i].get<unsigned>());
    }
    p.add_term(e, read_scalar<S>(field(terms[t], "coeff", tp), child(tp, "coeff")));
  }
  return p;
}

template <Scalar S>
MeasureSpec<S> read_measure(const json& j) {
  HistorySpace space = read_space(j);
  const std::size_t m = space.size();
  const json& vj = field(j, "variant", "");
  if (!vj.is_string()) fail("/variant", "expected a string");
  const std::string variant = vj.get<std::string>();
  if (variant == "polynomial") return {space, Measure<S>::polynomial(read_polynomial<S>(j, m))};
  if (variant == "quantum") {
    const json& amps = field(j, "amplitudes", "");
    if (!amps.is_array() || amps.size() != m) fail("/amplitudes", "expected " + std::to_string(m) + " amplitudes");
    std::vector<S> z;
    for (std::size_t i = 0; i < m; ++i) z.push_back(read_scalar<S>(amps[i], child("/amplitudes", i)));
    return {space, Measure<S>::quantum(std::move(z))};
  }
  if (variant == "table") {
    const json& tab = field(j, "table", "");
    if (!tab.is_array()) fail("/table", "expected an array");
    std::vector<typename Measure<S>::TableEntry> entries;
    for (std::size_t i = 0; i < tab.size(); ++i) {
      const std::string ep = child("/table", i);
      entries.push_back({read_group_element<S>(field(tab[i], "point", ep), space, child(ep, "point")),
                         read_scalar<S>(field(tab[i], "value", ep), child(ep, "value"))});
    }
    return {space, Measure<S>::table(m, std::move(entries))};
  }
  fail("/variant", "unknown variant '" + variant + "' (expected polynomial, quantum or table)");
}

template <Scalar S>
json to_json(const Measure<S>& mu, const HistorySpace& space) {
  json j{{"m", mu.dimension()}};
  if (space != HistorySpace::numbered(mu.dimension())) j["labels"] = space.labels();
  if (const auto* p = mu.as_polynomial()) {
    j["variant"] = "polynomial";
    json terms = json::array();
    for (const auto& [mono, c] : p->terms()) terms.push_back({{"monomial", mono}, {"coeff", to_json(c)}});
    j["terms"] = terms;
  } else if (const auto* z = mu.amplitudes()) {
    j["variant"] = "quantum";
    json amps = json::array();
    for (const auto& a : *z) amps.push_back(to_json(a));
    j["amplitudes"] = amps;
  } else if (const auto* t = mu.table_entries()) {
    j["variant"] = "table";
    json tab = json::array();
    for (const auto& e : *t) tab.push_back({{"point", to_json(e.point)}, {"value", to_json(e.value)}});
    j["table"] = tab;
  } else {
    throw InvalidArgument("closure-backed measures have no JSON form");
  }
  return j;
}

template <Scalar S>
json to_json(const SymmetricForm<S>& phi) {
  json table = json::array();
  for (const auto& [idx, v] : phi.table()) table.push_back({{"idx", idx}, {"value", to_json(v)}});
  return {{"order", phi.order()}, {"table", table}};
}

template <Scalar S>
json to_json(const Decomposition<S>& d) {
  json comps = json::array();
  for (const auto& c : d.components) comps.push_back(to_json(c));
  json j{{"components", comps}};
  if (!d.warnings.empty()) j["warnings"] = d.warnings;
  return j;
}

template <Scalar S>
Decomposition<S> read_decomposition(const json& j, std::size_t m) {
  const json& comps = field(j, "components", "");
  if (!comps.is_array()) fail("/components", "expected an array");
  Decomposition<S> d;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const std::string cp = child("/components", c);
    const json& oj = field(comps[c], "order", cp);
    if (!oj.is_number_unsigned()) fail(child(cp, "order"), "expected a positive integer");
    SymmetricForm<S> phi(oj.get<unsigned>(), m);
    const json& tab = field(comps[c], "table", cp);
    if (!tab.is_array()) fail(child(cp, "table"), "expected an array");
    for (std::size_t e = 0; e < tab.size(); ++e) {
      const std::string ep = child(child(cp, "table"), e);
      const json& idx = field(tab[e], "idx", ep);
      if (!idx.is_array() || idx.size() != phi.order()) fail(child(ep, "idx"), "index tuple has the wrong length");
      std::vector<std::size_t> ix;
      for (const auto& v : idx) {
        if (!v.is_number_unsigned() || v.get<std::size_t>() >= m) fail(child(ep, "idx"), "index out of range");
        ix.push_back(v.get<std::size_t>());
      }
      phi.set(ix, read_scalar<S>(field(tab[e], "value", ep), child(ep, "value")));
    }
    d.components.push_back(std::move(phi));
  }
  if (j.contains("warnings")) d.warnings = j["warnings"].get<std::vector<std::string>>();
  return d;
}

template <Scalar S>
json to_json(const InterferenceResult<S>& r) {
  json j{{"k", r.k}, {"value", to_json(r.value)}};
  if (r.terms) {
    json terms = json::array();
    for (const auto& t : *r.terms) terms.push_back({{"subset", t.subset}, {"sign", t.sign}, {"mu", to_json(t.value)}});
    j["terms"] = terms;
  }
  return j;
}

template <Scalar S>
json witness_json(const std::vector<GroupElement<S>>& w) {
  json arr = json::array();
  for (const auto& g : w) arr.push_back(to_json(g));
  return arr;
}

template <Scalar S>
json to_json(const OrderReport<S>& r) {
  json j{{"order", r.order ? json(*r.order) : json(nullptr)},
         {"evidence", to_string(r.evidence)},
         {"exceeds_cap", r.exceeds_cap},
         {"tuples_checked", r.tuples_checked},
         {"summary", r.summary}};
  if (!r.witness.empty()) {
    j["witness"] = witness_json(r.witness);
    j["witness_value"] = to_json(r.witness_value);
  }
  return j;
}

template <Scalar S>
json to_json(const PrimitivityReport<S>& r) {
  json vanishing = json::array();
  for (const auto& v : r.vanishing)
    vanishing.push_back({{"order", v.order}, {"symbolic", v.symbolic}, {"tuples_checked", v.tuples_checked}});
  return {{"order", r.order},
          {"evidence", to_string(r.evidence)},
          {"inconclusive", r.inconclusive},
          {"witness", witness_json(r.witness)},
          {"witness_value", to_json(r.witness_value)},
          {"vanishing", vanishing},
          {"summary", r.summary}};
}

inline Point2 read_point(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) fail(path, "expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const Point2& p) { return json::array({p.x, p.y}); }

inline SlitScenario read_scenario(const json& j) {
  SlitScenario s;
  s.source = read_point(field(j, "source", ""), "/source");
  s.detector = read_point(field(j, "detector", ""), "/detector");
  const json& slits = field(j, "slits", "");
  if (!slits.is_array()) fail("/slits", "expected an array of points");
  for (std::size_t i = 0; i < slits.size(); ++i) s.slits.push_back(read_point(slits[i], child("/slits", i)));
  const json& k = field(j, "wavenumber", "");
  if (!k.is_number()) fail("/wavenumber", "expected a number");
  s.wavenumber = k.get<double>();
  if (j.contains("model")) {
    if (!j["model"].is_string()) fail("/model", "expected a string");
    s.model = j["model"].get<std::string>();
  }
  return s;
}

inline json to_json(const SlitScenario& s) {
  json slits = json::array();
  for (const auto& p : s.slits) slits.push_back(to_json(p));
  return {{"source", to_json(s.source)},
          {"slits", slits},
          {"detector", to_json(s.detector)},
          {"wavenumber", s.wavenumber},
          {"model", s.model}};
}

inline json to_json(const SumRuleReport& r) {
  auto terms = [](const std::vector<SlitTerm>& ts, const char* key) {
    json arr = json::array();
    for (const auto& t : ts) arr.push_back({{key, t.slits}, {"value", t.value}});
    return arr;
  };
  return {{"k", r.k},
          {"tolerance", r.tolerance},
          {"probabilities", terms(r.probabilities, "open")},
          {"I2", terms(r.i2, "slits")},
          {"I3", terms(r.i3, "slits")},
          {"I4", terms(r.i4, "slits")},
          {"max_abs", {{"I2", r.max_i2}, {"I3", r.max_i3}, {"I4", r.max_i4}}},
          {"recursion_residual", r.recursion_residual},
          {"verdicts",
           {{"interference_present", r.interference_present},
            {"I3_vanishes", r.i3_vanishes},
            {"I4_vanishes", r.i4_vanishes}}}};
}

/// Interference tables as CSV: order,slits,value.
inline std::string to_csv(const SumRuleReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "order,slits,value\n";
  auto emit = [&](int order, const std::vector<SlitTerm>& ts) {
    for (const auto& t : ts) {
      out << order << ',';
      for (std::size_t i = 0; i < t.slits.size(); ++i) out << (i ? " " : "") << t.slits[i];
      out << ',' << t.value << '\n';
    }
  };
  emit(2, r.i2);
  emit(3, r.i3);
  emit(4, r.i4);
  return out.str();
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace hom::io
