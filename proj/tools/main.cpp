#include <chrono>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "probwb/experiments.hpp"

namespace {

struct Flag {
  const char* name;
  const char* help;
};

const std::map<std::string, std::vector<Flag>>& subcommand_flags() {
  static const std::map<std::string, std::vector<Flag>> flags{
      {"mallows-sample", {{"n", "permutation length"}, {"q", "Mallows parameter in (0,1]"}}},
      {"lis-hist", {{"n", "permutation length"}, {"q", "Mallows parameter in (0,1]; 1 is uniform"}}},
      {"asep-run",
       {{"n", "number of sites (even)"},
        {"alpha", "exponent in q = 1 - c/n^alpha"},
        {"c", "constant in q = 1 - c/n^alpha"},
        {"observable", "lis or midpoint"},
        {"burn_in", "steps before sampling (default 10 n^2)"},
        {"swap_up", "probability of 10 -> 01"},
        {"swap_down", "probability of 01 -> 10"}}},
      {"kac-compress",
       {{"n", "matrix size"},
        {"k", "compressed size"},
        {"matrix", "grid, two-atom, goe or gue"},
        {"mode", "chain, haar or single"},
        {"burn_in", "walk length (default 4 n^2 ln n)"}}},
      {"thermo-compress",
       {{"n", "matrix size"},
        {"k", "compressed size"},
        {"matrix", "grid, two-atom, goe or gue"},
        {"mode", "chain, haar or single"},
        {"burn_in", "chain length"},
        {"beta", "bath inverse variance"},
        {"mu", "thermostat rate"},
        {"lambda", "Kac rate"}}},
      {"ginibre-moments",
       {{"n", "matrix size"}, {"p", "comma list of A exponents"}, {"q", "comma list of A* exponents"}}},
      {"ginibre-density", {{"N", "matrix size"}, {"points", "radial grid points"}, {"rmax", "largest radius"}}},
      {"ginibre-constraint", {{"N", "matrix size"}, {"p", "comma list of moment orders"}}},
      {"qstirling", {{"beta", "q = exp(-beta/n)"}, {"n", "comma list of sizes"}}},
      {"foursquare",
       {{"counts", "n11,n12,n21,n22"},
        {"s", "vertical split"},
        {"t", "horizontal split"},
        {"q", "Mallows parameter"},
        {"beta", "use q = exp(-beta/n) instead of q"}}},
  };
  return flags;
}

const std::map<std::string, std::string>& subcommand_help() {
  static const std::map<std::string, std::string> help{
      {"mallows-sample", "draw Mallows permutations and tabulate inversions"},
      {"lis-hist", "histogram of the longest increasing subsequence"},
      {"asep-run", "exclusion process fluctuations of the walk LIS or midpoint height"},
      {"kac-compress", "ESD distance after compressing a Kac-walk conjugate"},
      {"thermo-compress", "ESD distance after compressing by a thermostat matrix"},
      {"ginibre-moments", "mixed trace moments of a Ginibre matrix"},
      {"ginibre-density", "radial eigenvalue and diagonal overlap densities"},
      {"ginibre-constraint", "moment constraint ledger for the overlaps"},
      {"qstirling", "q-Stirling coefficients and remainders"},
      {"foursquare", "quadrant count probabilities for Mallows points"},
  };
  return help;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probability workbench: Mallows, LIS, ASEP, Kac walk, Ginibre and q-Stirling experiments"};
  app.require_subcommand(1);

  probwb::RunConfig cfg;
  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::vector<std::pair<std::string, CLI::Option*>>> options;
  std::map<std::string, CLI::App*> subs;

  for (const auto& name : probwb::subcommand_names()) {
    CLI::App* sub = app.add_subcommand(name, subcommand_help().at(name));
    sub->add_option("--seed", cfg.master_seed, "master seed")->capture_default_str();
    sub->add_option("--trials", cfg.trials, "number of trials")->capture_default_str();
    sub->add_option("--threads", cfg.threads, "worker threads (results do not depend on this)")
        ->capture_default_str();
    sub->add_option("--out", cfg.out_dir, "output directory")->capture_default_str();
    for (const auto& f : subcommand_flags().at(name)) {
      CLI::Option* opt = sub->add_option(std::string("--") + f.name, values[name][f.name], f.help);
      options[name].emplace_back(f.name, opt);
    }
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    cfg.subcommand = name;
    for (const auto& [key, opt] : options[name])
      if (opt->count() > 0) cfg.params[key] = values[name][key];
  }

  try {
    const auto start = std::chrono::steady_clock::now();
    const probwb::RunResult result = probwb::run_experiment(cfg);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    probwb::write_outputs(cfg, result, wall);
    std::cout << probwb::summary_json(cfg, result, wall).dump(2) << '\n';
    if (!result.numeric_ok) {
      std::cerr << "error: non-finite estimate\n";
      return 1;
    }
  } catch (const probwb::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
