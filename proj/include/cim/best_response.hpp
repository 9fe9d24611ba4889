#pragma once

// Exact pure best response against a mixed strategy.
//
// Against q = {p_i : a^i}, the payoff of a pure action b separates per node:
//   payoff(b, q) = sum_j F_j(b_j),   F_j(x) = v_j * sum_i p_i * sign(x - a^i_j).
// F_j is a non-decreasing step function that can only change at an opponent
// amount a^i_j or at the smallest package above it, so each node needs only
// a handful of candidate offers. A knapsack-style DP over (node, spend) then
// maximizes sum_j F_j(b_j) subject to sum_j b_j <= budget.
//
// Ties between optimal actions are broken by smallest total spend, then by
// lexicographically smallest allocation.

#include <span>
#include <vector>

#include "cim/game.hpp"

namespace cim {

struct StepPoint {
  Amount offer;
  double gain;

  friend bool operator==(const StepPoint&, const StepPoint&) = default;
};

// Candidate offers for one node, ascending, with F_j at each. Always starts
// at offer 0.
using StepProfile = std::vector<StepPoint>;

enum class Pruning {
  kThresholds,  // breakpoints only, one offer per distinct gain level
  kNone,        // every offer in {0} u D, no pruning
};

// Step profiles of `responder` against the opponent's mixed strategy.
std::vector<StepProfile> build_step_profiles(const MixedStrategy& opponent,
                                             const GameSpec& spec, Player responder,
                                             Pruning pruning = Pruning::kThresholds);

struct ProfileOptimum {
  Allocation allocation;
  double objective;  // sum_j F_j(b_j) as accumulated by the DP
};

// Budget-constrained maximization of sum_j F_j(b_j) over the given profiles.
ProfileOptimum optimize_profiles(std::span<const StepProfile> profiles, Amount budget);

struct BestResponse {
  Allocation allocation;
  // Expected payoff of `allocation` against the opponent, for the responder.
  double payoff;
};

BestResponse best_response(const MixedStrategy& opponent, const GameSpec& spec,
                           Player responder);

}  // namespace cim
