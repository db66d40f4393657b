/// Command-line front end for the Hankel tensor library: generation,
/// evaluation, decompositions, spectral checks, and scripted scenarios.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "hankel/cli_app.hpp"
#include "hankel/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "hankel: strong Hankel tensor toolkit (evaluation, sum-of-squares and "
      "augmented Vandermonde decompositions, H-eigenvalue search, "
      "inheritance checks)"};
  app.require_subcommand(1);

  hankel::cli::GenOptions gen;
  std::string gen_out;
  CLI::App* sgen = app.add_subcommand("gen", "Generate a tensor file");
  sgen->add_option("kind", gen.kind,
                   "hilbert | planted-vandermonde | random-strong | from-file")
      ->required();
  sgen->add_option("--order", gen.order, "Tensor order m");
  sgen->add_option("--dim", gen.dim, "Tensor dimension n");
  sgen->add_option("--seed", gen.seed, "Random seed (default: HANKEL_SEED env)");
  sgen->add_option("--poles", gen.poles, "Explicit poles for planted-vandermonde");
  sgen->add_option("--pole-count", gen.pole_count,
                   "Number of random poles for planted-vandermonde");
  sgen->add_flag("--corner", gen.corner, "Add a corner (last-direction) term");
  sgen->add_option("--input", gen.input, "Source path for from-file");
  sgen->add_option("-o,--out", gen_out, "Output path ('-' or empty: stdout)");

  hankel::cli::EvalOptions ev;
  CLI::App* seval = app.add_subcommand("eval", "Evaluate the tensor polynomial");
  seval->add_option("file", ev.path, "Tensor file")->required();
  seval->add_option("-x,--x", ev.x, "Evaluation point (n numbers)")
      ->required()
      ->expected(-1);
  seval->add_option("--method", ev.method, "naive | fft | conv");
  seval->add_flag("--verify", ev.verify, "Cross-check all three methods");
  seval->add_flag("--json", ev.json, "Emit JSON");

  hankel::cli::SosOptions sos;
  CLI::App* ssos = app.add_subcommand("sos", "Sum-of-squares decomposition");
  ssos->add_option("file", sos.path, "Tensor file")->required();
  ssos->add_option("--tol", sos.tol, "Rank tolerance");
  ssos->add_flag("--json", sos.json, "Emit JSON only");

  hankel::cli::AvdOptions avd;
  CLI::App* savd =
      app.add_subcommand("avd", "Augmented Vandermonde decomposition");
  savd->add_option("file", avd.path, "Tensor file")->required();
  savd->add_option("--gamma", avd.gamma,
                   "Closure value for the completed moment matrix");
  savd->add_option("--tol", avd.tol, "Rank tolerance");
  savd->add_flag("--json", avd.json, "Emit JSON only");

  hankel::cli::HeigOptions heig;
  CLI::App* sheig = app.add_subcommand("heig", "H-eigenpair search");
  sheig->add_option("file", heig.path, "Tensor file")->required();
  sheig->add_option("--starts", heig.starts, "Multi-start count");
  sheig->add_option("--seed", heig.seed, "Random seed (default: HANKEL_SEED env)");
  sheig->add_flag("--json", heig.json, "Emit JSON only");

  hankel::cli::VerifyOptions ver;
  CLI::App* sver = app.add_subcommand("verify", "Check an inheritance property");
  sver->add_option("file", ver.path, "Tensor file")->required();
  sver->add_option("--property", ver.property, "first | second")->required();
  sver->add_option("--q", ver.q, "Order-lifting factor (first)");
  sver->add_option("--samples", ver.samples, "Identity sample count (first)");
  sver->add_option("--starts", ver.starts, "Multi-start count (second)");
  sver->add_option("--seed", ver.seed, "Random seed (default: HANKEL_SEED env)");
  sver->add_option("--tol", ver.tol, "Identity tolerance (first)");
  sver->add_flag("--json", ver.json, "Emit JSON only");

  int repro_which = 0;
  std::optional<std::uint64_t> repro_seed;
  CLI::App* srepro =
      app.add_subcommand("repro", "Run a scripted end-to-end scenario");
  srepro->add_option("scenario", repro_which, "1 | 2 | 3")->required();
  srepro->add_option("--seed", repro_seed, "Random seed for scenario 3");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sgen->parsed()) return hankel::cli::cmd_gen(gen, gen_out, std::cout);
    if (seval->parsed()) return hankel::cli::cmd_eval(ev, std::cout);
    if (ssos->parsed()) return hankel::cli::cmd_sos(sos, std::cout);
    if (savd->parsed()) return hankel::cli::cmd_avd(avd, std::cout);
    if (sheig->parsed()) return hankel::cli::cmd_heig(heig, std::cout);
    if (sver->parsed()) return hankel::cli::cmd_verify(ver, std::cout);
    if (srepro->parsed())
      return hankel::cli::cmd_repro(repro_which, repro_seed, std::cout);
  } catch (const hankel::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  }
  return 0;
}
