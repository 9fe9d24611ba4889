#pragma once

// Baseline allocation strategies and best responses to them.

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "cim/best_response.hpp"
#include "cim/game.hpp"
#include "cim/rng.hpp"

namespace cim {

// Compact description of a strategy, parsed from the command line:
//   oneeach | twoeach | random | random:Z | fixed:a,b,c | nash[:PATH]
//   | br:TARGET[:SAMPLES]
// where TARGET is any other form, e.g. "br:random:3:1000". A nash target
// takes no sample count. Bare "nash" leaves the equilibrium source to the
// caller.
struct StrategySpec {
  enum class Kind { kNashMixed, kOneEach, kTwoEach, kRandom, kRandomCapped, kFixed, kBestResponseTo };

  Kind kind = Kind::kOneEach;
  Amount cap = 0;                              // random_capped
  Allocation fixed;                            // fixed
  std::string nash_path;                       // nash_mixed, file source
  std::optional<std::pair<MixedStrategy, MixedStrategy>> nash;  // loaded equilibrium
  std::shared_ptr<const StrategySpec> target;  // best_response_to
  int samples = 1000;                          // best_response_to

  static StrategySpec parse(std::string_view text);
  static StrategySpec one_each() { return {}; }
  static StrategySpec two_each();
  static StrategySpec random(std::optional<Amount> cap = std::nullopt);
  static StrategySpec fixed_action(Allocation a);
  static StrategySpec nash_pair(MixedStrategy nash1, MixedStrategy nash2);
  static StrategySpec best_response_to(StrategySpec target, int samples = 1000);

  // Deterministic targets are answered exactly without sampling.
  bool deterministic() const;
  // Stable display name, e.g. "random(3)", "br(twoeach)".
  std::string name() const;
};

// 1 unit to each of the first k nodes.
Allocation gen_oneeach(const GameSpec& spec, Player owner);

// 2 units to each of the first floor(k/2) nodes; an odd remainder of 1 goes
// to the next node when 1 is a package and that node exists.
Allocation gen_twoeach(const GameSpec& spec, Player owner);

// Walks the nodes in influence order, drawing each amount uniformly from the
// offers that are <= cap (default: the budget), fit the remaining budget, and
// still leave the rest of the budget spendable on the remaining nodes. Spends
// exactly the budget. Requires packages {1..cap}.
Allocation gen_random(const GameSpec& spec, Player owner, std::optional<Amount> cap,
                      Rng& rng);

// Pure best response of `responder` to `target` played by the opponent.
// Stochastic targets are replaced by the empirical mixture of `samples` draws.
BestResponse gen_best_response_to(const StrategySpec& target, const GameSpec& spec,
                                  Player responder, int samples, Rng& rng);

// A strategy bound to a game and an owner, ready to be sampled each round.
// Best responses and equilibria are resolved once at construction.
class StrategySampler {
 public:
  StrategySampler(const StrategySpec& spec, const GameSpec& game, Player owner,
                  std::uint64_t master_seed);

  Allocation sample(Rng& rng) const;
  const std::string& name() const { return name_; }
  // The mixture this sampler plays, when it has a closed form.
  const std::optional<MixedStrategy>& mixture() const { return mixture_; }

 private:
  StrategySpec spec_;
  const GameSpec* game_;
  Player owner_;
  std::string name_;
  std::optional<MixedStrategy> mixture_;
};

}  // namespace cim
