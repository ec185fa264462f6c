#include "dispatch.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
  hom::cli::RunConfig cfg;
  CLI::App app{"Higher-order measures: interference functionals, polarization, coderivatives, slit simulator"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--backend", cfg.backend, "Scalar backend: exact, gaussian or approx")
        ->check(CLI::IsMember({"exact", "gaussian", "approx"}));
    sub->add_option("--tol", cfg.tol, "Absolute tolerance for the approx backend");
    sub->add_option("--seed", cfg.seed, "Seed for sampled probes");
    sub->add_option("--out,--report", cfg.out_path, "Write the JSON report here instead of stdout");
  };

  auto* ik = app.add_subcommand("ik", "Evaluate I_k on an argument list");
  ik->add_option("--measure", cfg.measure_path)->required();
  ik->add_option("--args", cfg.args_path)->required();
  ik->add_option("--k", cfg.k);
  ik->add_flag("--breakdown", cfg.breakdown, "Include the signed subset terms");
  common(ik);

  auto* order = app.add_subcommand("order", "Probe the order n of a measure (mu in M_n)");
  order->add_option("--measure", cfg.measure_path)->required();
  order->add_option("--n", cfg.n, "Largest order to probe");
  common(order);

  auto* decompose = app.add_subcommand("decompose", "Homogeneous decomposition of an order-n measure");
  decompose->add_option("--measure", cfg.measure_path)->required();
  decompose->add_option("--n", cfg.n)->required();
  common(decompose);

  auto* polarize = app.add_subcommand("polarize", "Evaluate the polarized form Phi");
  polarize->add_option("--measure", cfg.measure_path)->required();
  polarize->add_option("--args", cfg.args_path)->required();
  polarize->add_option("--n", cfg.n);
  common(polarize);

  auto* coderiv = app.add_subcommand("coderiv", "Coderivative at the identity (L^k f)(e)");
  coderiv->add_option("--fn", cfg.fn_path)->required();
  coderiv->add_option("--args", cfg.args_path)->required();
  coderiv->add_option("--k", cfg.k);
  common(coderiv);

  auto* prim = app.add_subcommand("primitivity", "Classify k-primitivity");
  prim->add_option("--fn", cfg.fn_path)->required();
  prim->add_option("--kmax", cfg.k_max);
  common(prim);

  auto* slits = app.add_subcommand("slits", "Run the multi-slit sum rules");
  slits->add_option("--scenario", cfg.scenario_path)->required();
  slits->add_option("--csv", cfg.csv_path, "Also write the I_k tables as CSV");
  common(slits);

  auto* selftest = app.add_subcommand("selftest", "Run the full invariant suite");
  common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return hom::cli::parse_failure;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return hom::cli::dispatch(cfg);
}
