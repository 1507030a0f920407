#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gcdsum/cli.hpp"

namespace cli = gcdsum::cli;

int main(int argc, char** argv) {
  CLI::App app{"GCD sums, spectral norms and extremal constructions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gcdsum 0.1.0");

  cli::RunConfig cfg;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> n;
  std::string method = "fast";
  std::string format = "csv";

  const std::map<std::string, cli::Command> commands = {
      {"sum", cli::Command::sum},         {"spectral", cli::Command::spectral},
      {"exact-check", cli::Command::exact_check}, {"construct", cli::Command::construct},
      {"closure", cli::Command::closure}, {"verify", cli::Command::verify},
      {"scan", cli::Command::scan}};
  const std::map<std::string, std::string> help = {
      {"sum", "GCD sum of a set file, or of {1..N}"},
      {"spectral", "largest eigenvalue of the N x N GCD matrix"},
      {"exact-check", "F(N) against its closed-form main term"},
      {"construct", "build the lower-bound set for N and report its sum"},
      {"closure", "divisor-closure transform of a set file"},
      {"verify", "run a verification suite"},
      {"scan", "tables over a grid of N"}};

  for (const auto& [name, cmd] : commands) {
    auto* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--alpha", cfg.alpha, "exponent in (0, 1/2)")->capture_default_str();
    sub->add_option("--n", n, "size parameter N");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    sub->add_option("--out", cfg.out_path, "write the report here instead of stdout");
    sub->add_option("--threads", threads, "worker threads (default: $GCDSUM_THREADS or 1)")
        ->check(CLI::Range(1u, 4096u));
    switch (cmd) {
      case cli::Command::sum:
        sub->add_option("--input", cfg.input_path, "set file");
        sub->add_option("--method", method, "naive or fast")
            ->check(CLI::IsMember({"naive", "fast"}))
            ->capture_default_str();
        break;
      case cli::Command::spectral:
        sub->add_option("--tol", cfg.tol, "residual tolerance")->capture_default_str();
        sub->add_option("--max-iter", cfg.max_iter, "iteration cap")->capture_default_str();
        break;
      case cli::Command::construct:
        sub->add_option("--delta", cfg.delta, "smoothness exponent")->capture_default_str();
        sub->add_option("--export", cfg.export_path, "write the constructed set here");
        sub->add_flag("--squarefree-only", cfg.squarefree_only, "keep only squarefree elements");
        break;
      case cli::Command::closure:
        sub->add_option("--input", cfg.input_path, "set file")->required();
        sub->add_option("--export", cfg.export_path, "write the transformed set here");
        break;
      case cli::Command::verify:
        sub->add_option("--suite", cfg.suite, "mult, rankin, closure, divideout, hbound, mobius, oracle or all")
            ->capture_default_str();
        sub->add_option("--delta", cfg.delta, "smoothness exponent for rankin")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
        sub->add_option("--trials", cfg.trials, "trials for randomized suites")->capture_default_str();
        sub->add_option("--primes", cfg.primes, "mult: number of primes in the top primorial")
            ->check(CLI::Range(1, 8))
            ->capture_default_str();
        break;
      case cli::Command::scan:
        sub->add_option("--kind", cfg.kind, "spectral, lower, prod, exact or squarefree")->capture_default_str();
        sub->add_option("--grid", cfg.grid, "grid values (N, or smoothness bounds for prod)")->delimiter(',');
        sub->add_option("--input", cfg.input_path, "set file (squarefree)");
        sub->add_option("--delta", cfg.delta, "smoothness exponent (lower)")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "residual tolerance (spectral)")->capture_default_str();
        sub->add_option("--max-iter", cfg.max_iter, "iteration cap (spectral)")->capture_default_str();
        sub->add_option("--beta", cfg.beta, "divisor exponent (squarefree)")->capture_default_str();
        sub->add_option("--beta-prime", cfg.beta_prime, "log exponent parameter (squarefree)")->capture_default_str();
        sub->add_flag("--squarefree-only", cfg.squarefree_only, "keep only squarefree elements (lower)");
        break;
      default:
        break;
    }
    sub->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  try {
    cfg.threads = cli::resolve_threads(threads);
  } catch (const gcdsum::Error& e) {
    std::cerr << "gcdsum: " << e.what() << '\n';
    return cli::kExitUsage;
  }
  cfg.n = n;
  cfg.method = method == "naive" ? gcdsum::SumMethod::naive : gcdsum::SumMethod::fast;
  cfg.format = format == "json" ? cli::Format::json : cli::Format::csv;
  return cli::run(cfg, std::cout, std::cerr);
}
