#include "cim/strategies.hpp"

#include <charconv>
#include <vector>

namespace cim {

namespace {

bool parse_int(std::string_view text, int& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && !text.empty();
}

std::optional<StrategySpec> try_parse(std::string_view text) {
  if (text == "oneeach" || text == "1each") return StrategySpec::one_each();
  if (text == "twoeach" || text == "2each") return StrategySpec::two_each();
  if (text == "random") return StrategySpec::random();
  if (text.starts_with("random:")) {
    int cap = 0;
    if (!parse_int(text.substr(7), cap) || cap < 1) return std::nullopt;
    return StrategySpec::random(cap);
  }
  if (text.starts_with("fixed:")) {
    std::vector<Amount> amounts;
    std::string_view rest = text.substr(6);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      std::size_t comma = rest.find(',', pos);
      if (comma == std::string_view::npos) comma = rest.size();
      int v = 0;
      if (!parse_int(rest.substr(pos, comma - pos), v) || v < 0) return std::nullopt;
      amounts.push_back(v);
      pos = comma + 1;
    }
    return StrategySpec::fixed_action(Allocation(std::move(amounts)));
  }
  if (text == "nash" || text.starts_with("nash:")) {
    if (text.size() == 5) return std::nullopt;
    StrategySpec s;
    s.kind = StrategySpec::Kind::kNashMixed;
    if (text.size() > 5) s.nash_path = std::string(text.substr(5));
    return s;
  }
  if (text.starts_with("br:")) {
    std::string_view rest = text.substr(3);
    if (auto target = try_parse(rest); target && target->kind != StrategySpec::Kind::kNashMixed) {
      return StrategySpec::best_response_to(std::move(*target));
    }
    // nash:PATH swallows everything, so a trailing sample count cannot be
    // split off it; other targets may end in ":SAMPLES".
    if (rest.starts_with("nash")) {
      auto target = try_parse(rest);
      if (!target) return std::nullopt;
      return StrategySpec::best_response_to(std::move(*target));
    }
    const std::size_t colon = rest.rfind(':');
    if (colon == std::string_view::npos) return std::nullopt;
    int samples = 0;
    if (!parse_int(rest.substr(colon + 1), samples) || samples < 1) return std::nullopt;
    auto target = try_parse(rest.substr(0, colon));
    if (!target) return std::nullopt;
    return StrategySpec::best_response_to(std::move(*target), samples);
  }
  return std::nullopt;
}

void require_package(const PlayerParams& params, Amount a, const char* who) {
  if (!params.packages.contains(a)) {
    throw Error(std::string(who) + " requires package " + std::to_string(a) +
                " in the package set {" + params.packages.to_string() + "}");
  }
}

}  // namespace

StrategySpec StrategySpec::parse(std::string_view text) {
  auto s = try_parse(text);
  if (!s) throw Error("cannot parse strategy '" + std::string(text) + "'");
  return *s;
}

StrategySpec StrategySpec::two_each() {
  StrategySpec s;
  s.kind = Kind::kTwoEach;
  return s;
}

StrategySpec StrategySpec::random(std::optional<Amount> cap) {
  StrategySpec s;
  s.kind = cap ? Kind::kRandomCapped : Kind::kRandom;
  s.cap = cap.value_or(0);
  return s;
}

StrategySpec StrategySpec::fixed_action(Allocation a) {
  StrategySpec s;
  s.kind = Kind::kFixed;
  s.fixed = std::move(a);
  return s;
}

StrategySpec StrategySpec::nash_pair(MixedStrategy nash1, MixedStrategy nash2) {
  StrategySpec s;
  s.kind = Kind::kNashMixed;
  s.nash = std::make_pair(std::move(nash1), std::move(nash2));
  return s;
}

StrategySpec StrategySpec::best_response_to(StrategySpec target, int samples) {
  if (samples < 1) throw Error("best-response sample count must be >= 1");
  StrategySpec s;
  s.kind = Kind::kBestResponseTo;
  s.target = std::make_shared<const StrategySpec>(std::move(target));
  s.samples = samples;
  return s;
}

bool StrategySpec::deterministic() const {
  return kind == Kind::kOneEach || kind == Kind::kTwoEach || kind == Kind::kFixed ||
         kind == Kind::kBestResponseTo;
}

std::string StrategySpec::name() const {
  switch (kind) {
    case Kind::kNashMixed:
      return "nash";
    case Kind::kOneEach:
      return "oneeach";
    case Kind::kTwoEach:
      return "twoeach";
    case Kind::kRandom:
      return "random";
    case Kind::kRandomCapped:
      return "random(" + std::to_string(cap) + ")";
    case Kind::kFixed:
      return "fixed" + fixed.to_string();
    case Kind::kBestResponseTo:
      return "br(" + target->name() + ")";
  }
  return "unknown";
}

Allocation gen_oneeach(const GameSpec& spec, Player owner) {
  const PlayerParams& params = spec.player(owner);
  require_package(params, 1, "oneeach");
  const auto k = static_cast<std::size_t>(params.budget);
  if (spec.node_count() < k) {
    throw Error("oneeach needs n >= k (n=" + std::to_string(spec.node_count()) +
                ", k=" + std::to_string(k) + ")");
  }
  Allocation a(std::vector<Amount>(spec.node_count(), 0));
  for (std::size_t j = 0; j < k; ++j) a.amounts[j] = 1;
  return a;
}

Allocation gen_twoeach(const GameSpec& spec, Player owner) {
  const PlayerParams& params = spec.player(owner);
  require_package(params, 2, "twoeach");
  const auto pairs = static_cast<std::size_t>(params.budget / 2);
  if (spec.node_count() < pairs) {
    throw Error("twoeach needs n >= k/2 (n=" + std::to_string(spec.node_count()) + ")");
  }
  Allocation a(std::vector<Amount>(spec.node_count(), 0));
  for (std::size_t j = 0; j < pairs; ++j) a.amounts[j] = 2;
  if (params.budget % 2 == 1 && pairs < spec.node_count() && params.packages.contains(1)) {
    a.amounts[pairs] = 1;
  }
  return a;
}

Allocation gen_random(const GameSpec& spec, Player owner, std::optional<Amount> cap,
                      Rng& rng) {
  const PlayerParams& params = spec.player(owner);
  const Amount k = params.budget;
  const Amount limit = cap.value_or(k);
  if (limit < 1 || limit > k) {
    throw Error("random cap must satisfy 1 <= z <= k (z=" + std::to_string(limit) + ")");
  }
  for (Amount d = 1; d <= limit; ++d) require_package(params, d, "random");
  const auto n = static_cast<std::int64_t>(spec.node_count());
  if (n * limit < k) {
    throw Error("random cannot spend budget " + std::to_string(k) + " over " +
                std::to_string(n) + " nodes with cap " + std::to_string(limit));
  }
  Allocation a(std::vector<Amount>(spec.node_count(), 0));
  Amount remaining = k;
  for (std::int64_t j = 0; j < n && remaining > 0; ++j) {
    const std::int64_t after = n - j - 1;
    const Amount high = std::min(limit, remaining);
    const Amount low = static_cast<Amount>(
        std::max<std::int64_t>(1, remaining - after * static_cast<std::int64_t>(limit)));
    const Amount draw = std::uniform_int_distribution<Amount>(low, high)(rng);
    a.amounts[static_cast<std::size_t>(j)] = draw;
    remaining -= draw;
  }
  return a;
}

BestResponse gen_best_response_to(const StrategySpec& target, const GameSpec& spec,
                                  Player responder, int samples, Rng& rng) {
  if (samples < 1) throw Error("best-response sample count must be >= 1");
  const StrategySampler sampler(target, spec, opponent(responder), rng());
  if (sampler.mixture()) return best_response(*sampler.mixture(), spec, responder);
  std::vector<Allocation> draws;
  draws.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) draws.push_back(sampler.sample(rng));
  return best_response(MixedStrategy::empirical(draws), spec, responder);
}

StrategySampler::StrategySampler(const StrategySpec& spec, const GameSpec& game,
                                 Player owner, std::uint64_t master_seed)
    : spec_(spec), game_(&game), owner_(owner), name_(spec.name()) {
  using Kind = StrategySpec::Kind;
  switch (spec.kind) {
    case Kind::kOneEach:
      mixture_ = MixedStrategy::pure(gen_oneeach(game, owner));
      break;
    case Kind::kTwoEach:
      mixture_ = MixedStrategy::pure(gen_twoeach(game, owner));
      break;
    case Kind::kFixed:
      game.check_feasible(spec.fixed, owner);
      mixture_ = MixedStrategy::pure(spec.fixed);
      break;
    case Kind::kNashMixed: {
      if (!spec.nash) {
        throw Error("nash strategy has no loaded equilibrium (" + spec.nash_path + ")");
      }
      const MixedStrategy& mine =
          owner == Player::kOne ? spec.nash->first : spec.nash->second;
      for (const auto& a : mine.support()) game.check_feasible(a, owner);
      mixture_ = mine;
      break;
    }
    case Kind::kRandom:
    case Kind::kRandomCapped: {
      // Validate parameters once up front.
      Rng probe = make_stream(master_seed, "strategy:probe");
      (void)gen_random(game, owner,
                       spec.kind == Kind::kRandomCapped ? std::optional<Amount>(spec.cap)
                                                        : std::nullopt,
                       probe);
      break;
    }
    case Kind::kBestResponseTo: {
      Rng rng = make_stream(master_seed, "strategy:br:" + name_,
                            static_cast<std::uint64_t>(index(owner)));
      mixture_ = MixedStrategy::pure(
          gen_best_response_to(*spec.target, game, owner, spec.samples, rng).allocation);
      break;
    }
  }
}

Allocation StrategySampler::sample(Rng& rng) const {
  if (mixture_) {
    if (mixture_->size() == 1) return mixture_->support().front();
    return mixture_->sample(rng);
  }
  const std::optional<Amount> cap =
      spec_.kind == StrategySpec::Kind::kRandomCapped ? std::optional<Amount>(spec_.cap)
                                                      : std::nullopt;
  return gen_random(*game_, owner_, cap, rng);
}

}  // namespace cim
