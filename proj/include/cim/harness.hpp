#pragma once

// Experiment orchestration behind the cimsolve command line.
//
// Every command reads a RunConfig, writes its artifacts under
// <out>/<dataset>-k<k>-n<n>-s<seed>/ and embeds the tool version, master
// seed and an echo of the configuration in each file. RR indices are cached
// under <out>/cache keyed by graph fingerprint, theta and seed.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "cim/diffusion.hpp"
#include "cim/double_oracle.hpp"
#include "cim/game.hpp"
#include "cim/graph.hpp"
#include "cim/rrset.hpp"
#include "cim/strategies.hpp"

namespace cim {

struct RunConfig {
  std::string graph;
  bool undirected = false;
  std::string prob = "indegree";
  std::optional<std::size_t> theta;  // default 100 * N
  Amount k1 = 10;
  Amount k2 = 10;
  std::string d1 = "1..k";
  std::string d2 = "1..k";
  std::size_t n = 50;
  double epsilon = 0.0;
  int max_iters = 10000;
  std::size_t rounds = 1000;
  std::uint64_t seed = 1;
  std::string out = "out";
  std::string dataset;  // default: graph file stem

  // simulate
  std::string p1 = "nash";
  std::string p2 = "random";
  std::string equilibrium;  // default: equilibrium.json in the run directory
  // br
  std::string target = "oneeach";
  int player = 1;
  // eval-payoff
  std::size_t trials = 20;
  std::size_t mc_rounds = 5000;

  // Not part of the echo: results do not depend on it.
  int threads = 0;

  nlohmann::json to_json() const;
  // Unknown keys are rejected so typos do not silently fall back to defaults.
  static RunConfig from_json(const nlohmann::json& j);

  std::string dataset_name() const;
  std::filesystem::path run_dir() const;
  std::filesystem::path cache_dir() const;
};

// JSON forms of the game objects. Allocations are plain arrays of amounts.
nlohmann::json to_json(const Allocation& a);
Allocation allocation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MixedStrategy& m);
MixedStrategy mixed_from_json(const nlohmann::json& j);
// [{node_id, value}] with external node ids.
nlohmann::json influence_to_json(const InfluenceValues& v, const Graph& g);

struct LoadedEquilibrium {
  std::vector<std::int64_t> node_ids;
  MixedStrategy nash1;
  MixedStrategy nash2;
  double game_value = 0.0;
};
LoadedEquilibrium load_equilibrium(const std::filesystem::path& path);

// Shortest round-trip text form of a double.
std::string format_double(double x);

// Everything a command needs about the instance.
struct Instance {
  Graph graph;
  RRIndex index;
  InfluenceValues values;
  GameSpec spec;
  bool cache_hit = false;
};

// Loads the graph, reuses or builds the RR index, selects n seeds and
// estimates their weighted values. Warnings go to `log` when non-null.
Instance prepare_instance(const RunConfig& cfg, std::ostream* log);

// Replaces every nash reference in `spec` with the loaded equilibrium,
// reading `default_path` for a bare "nash". Checks the node list against
// `game`.
void resolve_equilibria(StrategySpec& spec, const GameSpec& game, const Graph& g,
                        const std::filesystem::path& default_path);

struct SolveOutcome {
  EquilibriumResult result;
  Allocation init1;
  Allocation init2;
};

// The subcommands. Each writes its artifacts and returns the main result.
InfluenceValues cmd_seeds(const RunConfig& cfg, std::ostream& log);
SolveOutcome cmd_solve(const RunConfig& cfg, std::ostream& log);
BestResponse cmd_br(const RunConfig& cfg, std::ostream& log);
CompetitionStats cmd_simulate(const RunConfig& cfg, std::ostream& log);
PayoffErrors cmd_eval_payoff(const RunConfig& cfg, std::ostream& log);

}  // namespace cim
