// cimsolve: seed selection, equilibrium solving and tournaments for the
// competitive budget-allocation game.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "cim/harness.hpp"
#include "cim/rng.hpp"

namespace {

// --config is read before the real parse so that explicit flags, which
// CLI11 writes only when present, override the file.
cim::RunConfig initial_config(int argc, char** argv) {
  std::string path;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
  }
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw cim::Error("cannot open config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw cim::Error(path + ": " + e.what());
  }
  return cim::RunConfig::from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    cim::RunConfig cfg = initial_config(argc, argv);

    CLI::App app{"Competitive influence budget allocation solver"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cim::kToolVersion));

    std::string config_path;
    cim::Amount k = 0;
    std::string d;
    std::size_t theta = 0;
    app.add_option("--config", config_path, "JSON config file; flags override it");
    app.add_option("--graph", cfg.graph, "Edge-list file");
    app.add_flag("--undirected", cfg.undirected, "Treat each line as an undirected edge");
    app.add_option("--prob", cfg.prob, "indegree | const:p | file");
    auto* theta_opt = app.add_option("--theta", theta, "Number of RR-sets (default 100*N)");
    auto* k_opt = app.add_option("--k", k, "Budget of both players");
    app.add_option("--k1", cfg.k1, "Budget of player 1");
    app.add_option("--k2", cfg.k2, "Budget of player 2");
    auto* d_opt = app.add_option("--d", d, "Package set of both players: 1..k, 1..5 or 1,2,5");
    app.add_option("--d1", cfg.d1, "Package set of player 1");
    app.add_option("--d2", cfg.d2, "Package set of player 2");
    app.add_option("--n", cfg.n, "Number of influential nodes");
    app.add_option("--epsilon", cfg.epsilon, "Double Oracle gap tolerance");
    app.add_option("--max-iters", cfg.max_iters, "Double Oracle iteration limit");
    app.add_option("--rounds", cfg.rounds, "Tournament rounds");
    app.add_option("--seed", cfg.seed, "Master seed");
    app.add_option("--out", cfg.out, "Output root directory");
    app.add_option("--dataset", cfg.dataset, "Dataset label (default: graph file stem)");
    app.add_option("--threads", cfg.threads, "Worker threads (0 = all)");

    auto* seeds = app.add_subcommand("seeds", "Select influential nodes and estimate values");
    auto* solve = app.add_subcommand("solve", "Solve the game with Double Oracle");
    auto* br = app.add_subcommand("br", "Best response to a strategy");
    br->add_option("--target", cfg.target, "Strategy to answer, e.g. oneeach, random:3, nash");
    br->add_option("--player", cfg.player, "Responding player (1 or 2)");
    br->add_option("--equilibrium", cfg.equilibrium, "Equilibrium file for nash");
    auto* simulate = app.add_subcommand("simulate", "Run a tournament between two strategies");
    simulate->add_option("--p1", cfg.p1, "Strategy of player 1");
    simulate->add_option("--p2", cfg.p2, "Strategy of player 2");
    simulate->add_option("--equilibrium", cfg.equilibrium, "Equilibrium file for nash");
    auto* eval = app.add_subcommand("eval-payoff", "Compare payoff estimators with simulation");
    eval->add_option("--trials", cfg.trials, "Random assignments");
    eval->add_option("--mc-rounds", cfg.mc_rounds, "Cascades per assignment");
    for (auto* sub : {seeds, solve, br, simulate, eval}) sub->fallthrough();

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      return app.exit(e);
    }
    if (theta_opt->count() > 0) cfg.theta = theta;
    if (k_opt->count() > 0) {
      if (app.count("--k1") == 0) cfg.k1 = k;
      if (app.count("--k2") == 0) cfg.k2 = k;
    }
    if (d_opt->count() > 0) {
      if (app.count("--d1") == 0) cfg.d1 = d;
      if (app.count("--d2") == 0) cfg.d2 = d;
    }
    cim::set_thread_count(cfg.threads);

    if (seeds->parsed()) cim::cmd_seeds(cfg, std::cerr);
    if (solve->parsed()) cim::cmd_solve(cfg, std::cerr);
    if (br->parsed()) cim::cmd_br(cfg, std::cerr);
    if (simulate->parsed()) cim::cmd_simulate(cfg, std::cerr);
    if (eval->parsed()) cim::cmd_eval_payoff(cfg, std::cerr);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
