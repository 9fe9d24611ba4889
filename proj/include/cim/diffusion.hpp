#pragma once

// Competitive independent cascade and the tournaments built on it.
//
// Round 0 activates each player's seeds in that player's color. In every
// later round, each node activated in the previous round gets one attempt per
// out-edge; all attempts of the round are shuffled together and processed in
// that order, and an attempt on a still-inactive target succeeds with the
// edge probability, giving the target the attacker's color. The cascade ends
// when a round activates nothing.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cim/game.hpp"
#include "cim/graph.hpp"
#include "cim/rng.hpp"
#include "cim/rrset.hpp"
#include "cim/strategies.hpp"

namespace cim {

struct SeedSets {
  std::vector<NodeId> first;
  std::vector<NodeId> second;
};

// Node j goes to the higher offer. Equal positive offers are settled by a
// fair coin; nodes nobody bids on stay unassigned.
SeedSets assign_seeds(const Allocation& a1, const Allocation& a2,
                      std::span<const NodeId> nodes, Rng& rng);

struct SpreadCounts {
  std::size_t first = 0;   // nodes activated in player 1's color, seeds included
  std::size_t second = 0;

  long long difference() const {
    return static_cast<long long>(first) - static_cast<long long>(second);
  }
};

// Reusable cascade state for one graph. Not thread-safe; use one per worker.
class CascadeSimulator {
 public:
  explicit CascadeSimulator(const Graph& g);

  // Throws Error when the seed sets overlap or name unknown nodes.
  SpreadCounts run(std::span<const NodeId> first, std::span<const NodeId> second, Rng& rng);

 private:
  struct Attempt {
    NodeId attacker;
    NodeId target;
    double prob;
  };

  const Graph* g_;
  std::vector<std::uint8_t> color_;
  std::vector<NodeId> touched_;
  std::vector<NodeId> frontier_;
  std::vector<NodeId> next_;
  std::vector<Attempt> attempts_;
};

SpreadCounts diffuse(const Graph& g, std::span<const NodeId> first,
                     std::span<const NodeId> second, Rng& rng);

struct CompetitionStats {
  std::size_t rounds = 0;
  double win_pct = 0.0;   // rounds with I1 - I2 > 0
  double draw_pct = 0.0;  // rounds with I1 == I2
  double avg = 0.0;       // mean of I1 - I2
  double std = 0.0;       // sample standard deviation of I1 - I2
  std::uint64_t seed = 0;
};

// Summary of per-round differences, in round order.
CompetitionStats summarize(std::span<const long long> diffs, std::uint64_t seed);

// Round i draws from stream (seed, "tournament", i): an action per player,
// the seed assignment and the cascade. Rounds run in parallel.
CompetitionStats run_competition(const Graph& g, const GameSpec& spec,
                                 const StrategySampler& first,
                                 const StrategySampler& second, std::size_t rounds,
                                 std::uint64_t seed);

// Mean absolute error of payoff estimates against simulated differences.
struct PayoffErrors {
  std::size_t trials = 0;
  double weighted = 0.0;
  double simple = 0.0;
  double degree = 0.0;
};

// Each trial sends every node of `nodes` to player 1, player 2 or neither
// with probability 1/3 each, simulates mc_rounds cascades for the mean of
// I1 - I2, and compares it with sum(values of S1) - sum(values of S2) under
// weighted RR-set values, simple RR-set values and degree centrality.
PayoffErrors payoff_error_experiment(const Graph& g, const RRIndex& idx,
                                     std::span<const NodeId> nodes, std::size_t trials,
                                     std::size_t mc_rounds, bool undirected,
                                     std::uint64_t seed);

}  // namespace cim
