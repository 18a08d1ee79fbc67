#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "cli.hpp"
#include "oscq/errors.hpp"

using namespace oscq;
using namespace oscq::cli;

int main(int argc, char** argv) {
  std::string command_line;
  for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"oscq: orthogonal polynomials, zeros and quadrature for the Bessel weight J_nu"};
  app.require_subcommand(1);

  std::string nu_text = "0.25", prec_text = "auto", n_list, points, regime;
  ZerosArgs za;
  VerifyArgs va;
  AsymptoticsArgs aa;

  auto* zeros = app.add_subcommand("zeros", "zeros of P_n (raw and rescaled frames) as CSV plus manifest");
  zeros->add_option("--nu", nu_text, "order nu in [0,1)")->required();
  zeros->add_option("--n", za.n, "degree")->required();
  zeros->add_option("--prec", prec_text, "auto, or fixed working precision in bits");
  zeros->add_option("--out", za.out, "CSV path; the manifest goes to <out>.manifest.json")->required();
  zeros->add_option("--delta", za.delta, "exclusion radius for the zero-line statistic");
  zeros->add_flag("--allow-long", za.allow_long, "permit n > 64");

  auto* verify = app.add_subcommand("verify", "run an invariant suite; JSON report");
  verify->add_option("--suite", va.suite, "equilibrium|parametrix|smallnorm|quadrature|zeros")
      ->required()
      ->check(CLI::IsMember({"equilibrium", "parametrix", "smallnorm", "quadrature", "zeros"}));
  verify->add_option("--nu", nu_text, "order nu in [0,1)");
  verify->add_option("--n-list", n_list, "e.g. 1..10 or 16,32,64");
  verify->add_option("--prec", va.prec, "precision in bits (suite default if omitted)");
  verify->add_option("--report", va.report, "write the JSON report here instead of stdout");
  verify->add_flag("--allow-long", va.allow_long, "permit n > 64");

  auto* asym = app.add_subcommand("asymptotics", "P~_n against its outer or inner large-n form");
  asym->add_option("--nu", nu_text, "order nu in [0,1)")->required();
  asym->add_option("--n", aa.n, "degree")->required();
  asym->add_option("--points", aa.points, "points file, or grid:RE0,IM0,RE1,IM1,COUNT")->required();
  asym->add_option("--regime", aa.regime, "outer|inner")->required()->check(CLI::IsMember({"outer", "inner"}));
  asym->add_option("--out", aa.out, "CSV path (stdout if omitted)");
  asym->add_option("--prec", aa.prec, "precision of the prediction in bits");
  asym->add_option("--delta", aa.delta, "inner: minimum distance from 0 and +-1");
  asym->add_option("--min-dist", aa.min_dist, "outer: minimum distance from [-1,1]");
  asym->add_flag("--allow-long", aa.allow_long, "permit n > 64");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kDomain;
  }

  try {
    if (zeros->parsed()) {
      za.nu = parse_nu(nu_text);
      if (prec_text != "auto") {
        try {
          za.prec = std::stol(prec_text);
        } catch (const std::exception&) {
          throw DomainError("--prec must be 'auto' or a number of bits");
        }
      }
      za.command_line = command_line;
      return cmd_zeros(za, std::cerr);
    }
    if (verify->parsed()) {
      va.nu = parse_nu(nu_text);
      if (!n_list.empty()) va.n_list = parse_n_list(n_list);
      va.command_line = command_line;
      return cmd_verify(va, std::cout, std::cerr);
    }
    aa.nu = parse_nu(nu_text);
    aa.command_line = command_line;
    return cmd_asymptotics(aa, std::cout, std::cerr);
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const IndeterminateError& e) {
    std::cerr << "indeterminate: " << e.what() << " (at " << e.prec_bits() << " bits)\n";
    return kIndeterminate;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const QuadratureError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverFailure;
  }
}
