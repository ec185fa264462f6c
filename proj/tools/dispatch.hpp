#pragma once

// Command dispatch for the `hom` tool, separated from argument parsing so
// tests can drive it in-process.

#include "hom/io.hpp"
#include "hom/selftest.hpp"

#include <iomanip>
#include <iostream>
#include <optional>

namespace hom::cli {

/// Exit-code contract.
enum ExitCode : int { ok = 0, invariant_failure = 1, parse_failure = 2, cap_exceeded = 3 };

struct RunConfig {
  std::string command;
  std::string measure_path;
  std::string fn_path;
  std::string args_path;
  std::string scenario_path;
  std::string out_path;
  std::string csv_path;
  std::string backend = "exact";
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::optional<unsigned> k;
  std::optional<unsigned> n;
  unsigned k_max = 4;
  unsigned n_max = 4;
  std::size_t table_cap = max_form_entries;
  bool breakdown = false;
};

namespace detail {

using json = io::json;

inline void emit(const RunConfig& cfg, const json& j, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw ParseError(cfg.out_path + ": cannot open for writing");
  f << text;
}

inline const std::string& require_path(const std::string& p, const char* flag) {
  if (p.empty()) throw ParseError(std::string("missing required option ") + flag);
  return p;
}

template <Scalar S>
std::vector<GroupElement<S>> load_args(const RunConfig& cfg, const HistorySpace& space) {
  const auto& path = require_path(cfg.args_path, "--args");
  try {
    return io::read_args<S>(io::read_json_file(path), space);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

template <Scalar S>
io::MeasureSpec<S> load_measure(const std::string& path) {
  auto j = io::read_json_file(path);
  try {
    return io::read_measure<S>(j);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

template <Scalar S>
int run_ik(const RunConfig& cfg, std::ostream& out) {
  const auto spec = load_measure<S>(require_path(cfg.measure_path, "--measure"));
  const auto args = load_args<S>(cfg, spec.space);
  if (cfg.k && *cfg.k != args.size())
    throw InvalidArgument("--k " + std::to_string(*cfg.k) + " does not match " + std::to_string(args.size()) +
                          " arguments");
  emit(cfg, io::to_json(eval_ik(spec.measure, std::span<const GroupElement<S>>(args), cfg.breakdown)), out);
  return ok;
}

template <Scalar S>
int run_order(const RunConfig& cfg, std::ostream& out) {
  const auto spec = load_measure<S>(require_path(cfg.measure_path, "--measure"));
  const unsigned n_max = cfg.n.value_or(cfg.n_max);
  const TupleSampler<S> samples(spec.space.size(), cfg.seed);
  emit(cfg, io::to_json(probe_order(spec.measure, n_max, samples, Tolerance{cfg.tol})), out);
  return ok;
}

template <Scalar S>
int run_decompose(const RunConfig& cfg, std::ostream& out) {
  const auto spec = load_measure<S>(require_path(cfg.measure_path, "--measure"));
  const unsigned n = cfg.n.value_or(cfg.n_max);
  if (n >= 1 && SymmetricForm<S>::table_size(n, spec.space.size()) > cfg.table_cap)
    throw CapExceeded("decomposition too large: table size above configured cap");
  DecomposeOptions opts;
  opts.allow_approx = true;
  opts.seed = cfg.seed;
  emit(cfg, io::to_json(decompose(spec.measure, n, opts)), out);
  return ok;
}

template <Scalar S>
int run_polarize(const RunConfig& cfg, std::ostream& out) {
  const auto spec = load_measure<S>(require_path(cfg.measure_path, "--measure"));
  const auto args = load_args<S>(cfg, spec.space);
  const auto n = cfg.n.value_or(static_cast<unsigned>(args.size()));
  emit(cfg, {{"n", n}, {"value", io::to_json(polarize(spec.measure, n, args))}}, out);
  return ok;
}

template <Scalar S>
GroupFunction<S> load_function(const RunConfig& cfg) {
  const auto spec = load_measure<S>(require_path(cfg.fn_path, "--fn"));
  return GroupFunction<S>::from_measure(spec.measure);
}

template <Scalar S>
int run_coderiv(const RunConfig& cfg, std::ostream& out) {
  const auto spec = load_measure<S>(require_path(cfg.fn_path, "--fn"));
  const auto f = GroupFunction<S>::from_measure(spec.measure);
  const auto args = load_args<S>(cfg, spec.space);
  const unsigned k = cfg.k.value_or(static_cast<unsigned>(args.size()));
  emit(cfg, {{"k", k}, {"value", io::to_json(coderivative_at_identity(f, k, args))}}, out);
  return ok;
}

template <Scalar S>
int run_primitivity(const RunConfig& cfg, std::ostream& out) {
  const auto f = load_function<S>(cfg);
  const TupleSampler<S> samples(f.dimension(), cfg.seed);
  emit(cfg, io::to_json(classify_primitivity(f, cfg.k_max, samples, Tolerance{cfg.tol})), out);
  return ok;
}

inline int run_slits(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto& path = require_path(cfg.scenario_path, "--scenario");
  SlitScenario s;
  try {
    s = io::read_scenario(io::read_json_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
  const auto rep = run_sum_rules(s, cfg.tol);
  emit(cfg, io::to_json(rep), out);
  if (!cfg.csv_path.empty()) {
    std::ofstream csv(cfg.csv_path, std::ios::binary);
    if (!csv) throw ParseError(cfg.csv_path + ": cannot open for writing");
    csv << io::to_csv(rep);
  }
  std::ostream& verdicts = cfg.out_path.empty() ? err : out;
  verdicts << "I2 interference present: " << (rep.interference_present ? "YES" : "NO") << " (max |I2| = "
           << rep.max_i2 << ")\n";
  bool pass = true;
  if (rep.k >= 3) {
    verdicts << "I3 ≈ 0: " << (rep.i3_vanishes ? "PASS" : "FAIL") << " (max |I3| = " << rep.max_i3 << ")\n";
    pass = pass && rep.i3_vanishes;
  }
  if (rep.k >= 4) {
    verdicts << "I4 ≈ 0: " << (rep.i4_vanishes ? "PASS" : "FAIL") << " (max |I4| = " << rep.max_i4 << ")\n";
    pass = pass && rep.i4_vanishes;
  }
  return pass ? ok : invariant_failure;
}

inline int run_selftest(const RunConfig& cfg, std::ostream& out) {
  json results = json::array();
  std::vector<std::string> failing;
  out << std::left << std::setw(5) << "id" << std::setw(6) << "result" << std::setw(10) << "seconds"
      << "identity\n";
  for (const auto& check : selftest::checks()) {
    const auto r = selftest::run_check(check, cfg.seed);
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(3) << r.seconds;
    out << std::left << std::setw(5) << r.id << std::setw(6) << (r.passed ? "PASS" : "FAIL") << std::setw(10)
        << secs.str() << r.identity;
    if (!r.detail.empty()) out << "  [" << r.detail << "]";
    out << "\n";
    out.flush();
    if (!r.passed) failing.push_back(r.id + " (" + r.identity + ")");
    results.push_back({{"id", r.id}, {"identity", r.identity}, {"passed", r.passed}, {"detail", r.detail}});
  }
  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path, std::ios::binary);
    f << json{{"seed", cfg.seed}, {"checks", results}}.dump(2) << "\n";
  }
  if (failing.empty()) {
    out << "all checks passed\n";
    return ok;
  }
  out << "failing:\n";
  for (const auto& f : failing) out << "  " << f << "\n";
  return invariant_failure;
}

template <Scalar S>
int run_typed(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "ik") return run_ik<S>(cfg, out);
  if (cfg.command == "order") return run_order<S>(cfg, out);
  if (cfg.command == "decompose") return run_decompose<S>(cfg, out);
  if (cfg.command == "polarize") return run_polarize<S>(cfg, out);
  if (cfg.command == "coderiv") return run_coderiv<S>(cfg, out);
  if (cfg.command == "primitivity") return run_primitivity<S>(cfg, out);
  throw ParseError("unknown command '" + cfg.command + "'");
}

}  // namespace detail

/// Runs one command; never throws. Errors go to `err` with the exit code
/// from the contract above.
inline int dispatch(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    if (cfg.command == "selftest") return detail::run_selftest(cfg, out);
    if (cfg.command == "slits") return detail::run_slits(cfg, out, err);
    if (cfg.backend == "exact") return detail::run_typed<Rational>(cfg, out);
    if (cfg.backend == "gaussian") return detail::run_typed<GaussianRational>(cfg, out);
    if (cfg.backend == "approx") return detail::run_typed<Complex>(cfg, out);
    throw ParseError("unknown backend '" + cfg.backend + "' (expected exact, gaussian or approx)");
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return parse_failure;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return cap_exceeded;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << "\n";
    return parse_failure;
  } catch (const DimensionMismatch& e) {
    err << "invalid input: " << e.what() << "\n";
    return parse_failure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return invariant_failure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return invariant_failure;
  }
}

}  // namespace hom::cli
