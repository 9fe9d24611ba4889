#pragma once

// The budget-allocation game over a fixed set of influential nodes.
//
// Each player offers every influential node either nothing or one package
// from its package set, spending at most its budget. A node goes to the
// higher offer, ties between positive offers are settled by a fair coin.
// With node values v_j, player 1's payoff against a pure action of player 2
// is sum_j gain(a1_j, a2_j, v_j) where gain is +v on a win, -v on a loss and
// 0 on a tie. The game is zero-sum.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cim/common.hpp"
#include "cim/rrset.hpp"

namespace cim {

enum class Player : int { kOne = 0, kTwo = 1 };

inline Player opponent(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}
inline int index(Player p) { return static_cast<int>(p); }

// Sorted set of distinct positive package values.
class PackageSet {
 public:
  PackageSet() = default;
  explicit PackageSet(std::vector<Amount> values);

  // 1..k
  static PackageSet range(Amount low, Amount high);
  // "1..k" (k substituted by `budget`), "1..5", or "1,2,5".
  static PackageSet parse(std::string_view text, Amount budget);

  std::span<const Amount> values() const { return values_; }
  bool contains(Amount a) const;
  bool empty() const { return values_.empty(); }
  // Smallest package strictly greater than a, or 0 if none.
  Amount next_above(Amount a) const;
  std::string to_string() const;

  friend bool operator==(const PackageSet&, const PackageSet&) = default;

 private:
  std::vector<Amount> values_;
};

struct PlayerParams {
  Amount budget = 0;
  PackageSet packages;

  friend bool operator==(const PlayerParams&, const PlayerParams&) = default;
};

// A pure action: one amount per influential node, indexed by position in
// the ordered influential set.
struct Allocation {
  std::vector<Amount> amounts;

  Allocation() = default;
  explicit Allocation(std::vector<Amount> a) : amounts(std::move(a)) {}
  Allocation(std::initializer_list<Amount> a) : amounts(a) {}

  std::size_t size() const { return amounts.size(); }
  Amount total() const;
  std::string to_string() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
  friend auto operator<=>(const Allocation&, const Allocation&) = default;
};

struct AllocationHash {
  std::size_t operator()(const Allocation& a) const {
    return static_cast<std::size_t>(
        fnv1a(a.amounts.data(), a.amounts.size() * sizeof(Amount)));
  }
};

class GameSpec {
 public:
  GameSpec() = default;
  GameSpec(InfluenceValues values, PlayerParams first, PlayerParams second);

  std::size_t node_count() const { return values_.size(); }
  std::span<const NodeId> nodes() const { return values_.nodes; }
  std::span<const double> values() const { return values_.values; }
  const InfluenceValues& influence() const { return values_; }
  const PlayerParams& player(Player p) const { return players_[index(p)]; }
  bool symmetric() const { return players_[0] == players_[1]; }

  bool feasible(const Allocation& a, Player p) const;
  // Throws Error describing the first violated constraint.
  void check_feasible(const Allocation& a, Player p) const;

 private:
  InfluenceValues values_;
  PlayerParams players_[2];
};

// Probability distribution over pure actions. Construction validates the
// invariants: matching lengths, probabilities > 0 summing to 1 within 1e-9,
// distinct support entries.
class MixedStrategy {
 public:
  MixedStrategy() = default;
  MixedStrategy(std::vector<Allocation> support, std::vector<double> probs);

  static MixedStrategy pure(Allocation a);
  // Merges duplicate draws and weights each action by its frequency.
  static MixedStrategy empirical(std::span<const Allocation> draws);

  std::span<const Allocation> support() const { return support_; }
  std::span<const double> probs() const { return probs_; }
  std::size_t size() const { return support_.size(); }

  const Allocation& sample(Rng& rng) const;

 private:
  std::vector<Allocation> support_;
  std::vector<double> probs_;
};

// +v if mine > theirs, -v if mine < theirs, 0 on a tie.
inline double node_gain(Amount mine, Amount theirs, double value) {
  if (mine > theirs) return value;
  if (mine < theirs) return -value;
  return 0.0;
}

// Payoff of `mine` against `theirs` for the holder of `mine`. No feasibility
// checks; both vectors must have values.size() entries.
double contest_payoff(const Allocation& mine, const Allocation& theirs,
                      std::span<const double> values);

// Expected contest_payoff of `mine` against a mixed strategy.
double expected_payoff(const Allocation& mine, const MixedStrategy& theirs,
                       std::span<const double> values);

// Player 1's payoff. Throws if either action is infeasible for its player.
double payoff_pure(const Allocation& a1, const Allocation& a2, const GameSpec& spec);

// Player 1's expected payoff for pure a1 against player 2 mixing q.
double payoff_mixed(const Allocation& a1, const MixedStrategy& q,
                    const GameSpec& spec);

// Number of ways to spend exactly k units over n nodes with packages 1..k:
// C(k + n - 1, n - 1).
boost::multiprecision::cpp_int action_space_size(std::uint64_t k, std::uint64_t n);

}  // namespace cim
