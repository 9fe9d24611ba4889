#include "cim/game.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

#include "cim/kernels.hpp"

namespace cim {

namespace {

Amount parse_amount(std::string_view text) {
  Amount v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error("bad package value: '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

PackageSet::PackageSet(std::vector<Amount> values) : values_(std::move(values)) {
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  if (!values_.empty() && values_.front() < 1) {
    throw Error("package values must be positive");
  }
}

PackageSet PackageSet::range(Amount low, Amount high) {
  if (low < 1 || high < low) throw Error("bad package range");
  std::vector<Amount> v(static_cast<std::size_t>(high - low + 1));
  std::iota(v.begin(), v.end(), low);
  return PackageSet(std::move(v));
}

PackageSet PackageSet::parse(std::string_view text, Amount budget) {
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    const std::string_view lo = text.substr(0, dots);
    const std::string_view hi = text.substr(dots + 2);
    return range(parse_amount(lo), hi == "k" ? budget : parse_amount(hi));
  }
  std::vector<Amount> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    v.push_back(parse_amount(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return PackageSet(std::move(v));
}

bool PackageSet::contains(Amount a) const {
  return std::binary_search(values_.begin(), values_.end(), a);
}

Amount PackageSet::next_above(Amount a) const {
  auto it = std::upper_bound(values_.begin(), values_.end(), a);
  return it == values_.end() ? 0 : *it;
}

std::string PackageSet::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values_[i]);
  }
  return out;
}

Amount Allocation::total() const {
  return std::accumulate(amounts.begin(), amounts.end(), Amount{0});
}

std::string Allocation::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < amounts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(amounts[i]);
  }
  return out + "}";
}

GameSpec::GameSpec(InfluenceValues values, PlayerParams first, PlayerParams second)
    : values_(std::move(values)), players_{std::move(first), std::move(second)} {
  if (values_.nodes.empty()) throw Error("game needs at least one influential node");
  if (values_.nodes.size() != values_.values.size()) {
    throw Error("influential node and value lists differ in length");
  }
  for (double v : values_.values) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw Error("node values must be finite and >= 0");
  }
  for (const auto& p : players_) {
    if (p.budget < 1) throw Error("budgets must be at least 1");
    if (p.packages.empty()) throw Error("package sets must be non-empty");
  }
}

bool GameSpec::feasible(const Allocation& a, Player p) const {
  const PlayerParams& params = player(p);
  if (a.size() != node_count()) return false;
  std::int64_t total = 0;
  for (Amount x : a.amounts) {
    if (x != 0 && !params.packages.contains(x)) return false;
    total += x;
  }
  return total <= params.budget;
}

void GameSpec::check_feasible(const Allocation& a, Player p) const {
  const PlayerParams& params = player(p);
  const std::string who = p == Player::kOne ? "player 1" : "player 2";
  if (a.size() != node_count()) {
    throw Error(who + " allocation has " + std::to_string(a.size()) +
                " entries, expected " + std::to_string(node_count()));
  }
  std::int64_t total = 0;
  for (Amount x : a.amounts) {
    if (x != 0 && !params.packages.contains(x)) {
      throw Error(who + " allocation " + a.to_string() + " uses amount " +
                  std::to_string(x) + " outside its package set");
    }
    total += x;
  }
  if (total > params.budget) {
    throw Error(who + " allocation " + a.to_string() + " spends " +
                std::to_string(total) + " > budget " + std::to_string(params.budget));
  }
}

MixedStrategy::MixedStrategy(std::vector<Allocation> support, std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
  if (support_.empty()) throw Error("mixed strategy has empty support");
  if (support_.size() != probs_.size()) {
    throw Error("mixed strategy support and probabilities differ in length");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p > 0.0)) throw Error("mixed strategy probabilities must be > 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error("mixed strategy probabilities sum to " + std::to_string(sum));
  }
  std::vector<const Allocation*> sorted;
  for (const auto& a : support_) sorted.push_back(&a);
  std::sort(sorted.begin(), sorted.end(),
            [](const Allocation* x, const Allocation* y) { return *x < *y; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (*sorted[i] == *sorted[i - 1]) throw Error("mixed strategy support repeats an action");
  }
  const std::size_t n = support_.front().size();
  for (const auto& a : support_) {
    if (a.size() != n) throw Error("mixed strategy actions differ in length");
  }
}

MixedStrategy MixedStrategy::pure(Allocation a) {
  return MixedStrategy({std::move(a)}, {1.0});
}

MixedStrategy MixedStrategy::empirical(std::span<const Allocation> draws) {
  if (draws.empty()) throw Error("empirical strategy needs at least one draw");
  std::map<Allocation, std::size_t> counts;
  for (const auto& a : draws) ++counts[a];
  std::vector<Allocation> support;
  std::vector<double> probs;
  for (auto& [a, c] : counts) {
    support.push_back(a);
    probs.push_back(static_cast<double>(c) / static_cast<double>(draws.size()));
  }
  return MixedStrategy(std::move(support), std::move(probs));
}

const Allocation& MixedStrategy::sample(Rng& rng) const {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    acc += probs_[i];
    if (u < acc) return support_[i];
  }
  return support_.back();
}

double contest_payoff(const Allocation& mine, const Allocation& theirs,
                      std::span<const double> values) {
  return kernels::active().contest_sum(mine.amounts.data(), theirs.amounts.data(),
                                       values.data(), values.size());
}

double expected_payoff(const Allocation& mine, const MixedStrategy& theirs,
                       std::span<const double> values) {
  double sum = 0.0;
  for (std::size_t i = 0; i < theirs.size(); ++i) {
    sum += theirs.probs()[i] * contest_payoff(mine, theirs.support()[i], values);
  }
  return sum;
}

double payoff_pure(const Allocation& a1, const Allocation& a2, const GameSpec& spec) {
  spec.check_feasible(a1, Player::kOne);
  spec.check_feasible(a2, Player::kTwo);
  return contest_payoff(a1, a2, spec.values());
}

double payoff_mixed(const Allocation& a1, const MixedStrategy& q,
                    const GameSpec& spec) {
  spec.check_feasible(a1, Player::kOne);
  for (const auto& a : q.support()) spec.check_feasible(a, Player::kTwo);
  return expected_payoff(a1, q, spec.values());
}

boost::multiprecision::cpp_int action_space_size(std::uint64_t k, std::uint64_t n) {
  if (n == 0) throw Error("action space needs at least one node");
  // C(k + n - 1, n - 1), built incrementally so every partial product is an
  // exact binomial coefficient.
  boost::multiprecision::cpp_int result = 1;
  const std::uint64_t r = n - 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    result *= (k + i);
    result /= i;
  }
  return result;
}

}  // namespace cim
