#include "cim/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cim/parallel.hpp"

namespace cim {

SeedSets assign_seeds(const Allocation& a1, const Allocation& a2,
                      std::span<const NodeId> nodes, Rng& rng) {
  if (a1.size() != nodes.size() || a2.size() != nodes.size()) {
    throw Error("allocation length does not match the influential node count");
  }
  SeedSets out;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const Amount x = a1.amounts[j];
    const Amount y = a2.amounts[j];
    if (x > y) {
      out.first.push_back(nodes[j]);
    } else if (y > x) {
      out.second.push_back(nodes[j]);
    } else if (x > 0) {
      (fair_coin(rng) ? out.first : out.second).push_back(nodes[j]);
    }
  }
  return out;
}

CascadeSimulator::CascadeSimulator(const Graph& g) : g_(&g), color_(g.node_count(), 0) {}

SpreadCounts CascadeSimulator::run(std::span<const NodeId> first,
                                   std::span<const NodeId> second, Rng& rng) {
  const std::size_t n = g_->node_count();
  for (NodeId v : touched_) color_[v] = 0;
  touched_.clear();
  frontier_.clear();

  SpreadCounts counts;
  auto seed = [&](std::span<const NodeId> seeds, std::uint8_t c) {
    for (NodeId v : seeds) {
      if (v >= n) throw Error("seed node " + std::to_string(v) + " is out of range");
      if (color_[v] == c) continue;
      if (color_[v] != 0) {
        throw Error("seed sets overlap at node " + std::to_string(g_->external_id(v)));
      }
      color_[v] = c;
      touched_.push_back(v);
      frontier_.push_back(v);
      (c == 1 ? counts.first : counts.second) += 1;
    }
  };
  seed(first, 1);
  seed(second, 2);

  while (!frontier_.empty()) {
    attempts_.clear();
    for (NodeId u : frontier_) {
      const auto targets = g_->out_neighbors(u);
      const auto probs = g_->out_probs(u);
      for (std::size_t e = 0; e < targets.size(); ++e) {
        if (color_[targets[e]] == 0) attempts_.push_back({u, targets[e], probs[e]});
      }
    }
    std::shuffle(attempts_.begin(), attempts_.end(), rng);
    next_.clear();
    for (const Attempt& a : attempts_) {
      if (color_[a.target] != 0) continue;
      if (!coin(rng, a.prob)) continue;
      const std::uint8_t c = color_[a.attacker];
      color_[a.target] = c;
      touched_.push_back(a.target);
      next_.push_back(a.target);
      (c == 1 ? counts.first : counts.second) += 1;
    }
    frontier_.swap(next_);
  }
  return counts;
}

SpreadCounts diffuse(const Graph& g, std::span<const NodeId> first,
                     std::span<const NodeId> second, Rng& rng) {
  CascadeSimulator sim(g);
  return sim.run(first, second, rng);
}

CompetitionStats summarize(std::span<const long long> diffs, std::uint64_t seed) {
  CompetitionStats s;
  s.rounds = diffs.size();
  s.seed = seed;
  if (diffs.empty()) return s;
  std::size_t wins = 0;
  std::size_t draws = 0;
  double sum = 0.0;
  for (long long d : diffs) {
    wins += d > 0;
    draws += d == 0;
    sum += static_cast<double>(d);
  }
  const double count = static_cast<double>(diffs.size());
  s.win_pct = 100.0 * static_cast<double>(wins) / count;
  s.draw_pct = 100.0 * static_cast<double>(draws) / count;
  s.avg = sum / count;
  if (diffs.size() > 1) {
    double sq = 0.0;
    for (long long d : diffs) {
      const double dev = static_cast<double>(d) - s.avg;
      sq += dev * dev;
    }
    s.std = std::sqrt(sq / (count - 1.0));
  }
  return s;
}

CompetitionStats run_competition(const Graph& g, const GameSpec& spec,
                                 const StrategySampler& first,
                                 const StrategySampler& second, std::size_t rounds,
                                 std::uint64_t seed) {
  if (rounds < 1) throw Error("rounds must be >= 1");
  std::vector<long long> diffs(rounds);
  parallel_for_chunks(rounds, [&](std::size_t begin, std::size_t end) {
    CascadeSimulator sim(g);
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng = make_stream(seed, "tournament", i);
      const Allocation a1 = first.sample(rng);
      const Allocation a2 = second.sample(rng);
      const SeedSets seeds = assign_seeds(a1, a2, spec.nodes(), rng);
      diffs[i] = sim.run(seeds.first, seeds.second, rng).difference();
    }
  });
  return summarize(diffs, seed);
}

PayoffErrors payoff_error_experiment(const Graph& g, const RRIndex& idx,
                                     std::span<const NodeId> nodes, std::size_t trials,
                                     std::size_t mc_rounds, bool undirected,
                                     std::uint64_t seed) {
  if (nodes.size() > g.node_count()) throw Error("n exceeds the node count");
  if (trials < 1 || mc_rounds < 1) throw Error("trials and mc_rounds must be >= 1");
  if (idx.node_count() != g.node_count()) throw Error("RR index does not match the graph");

  const InfluenceValues weighted = estimate_values(idx, nodes);
  const InfluenceValues simple = estimate_values_simple(idx, nodes);
  const std::vector<double> centrality = degree_centrality(g, undirected);

  PayoffErrors out;
  out.trials = trials;
  std::vector<long long> diffs(mc_rounds);
  for (std::size_t t = 0; t < trials; ++t) {
    Rng assign_rng = make_stream(seed, "payoff-error:assign", t);
    std::uniform_int_distribution<int> side(0, 2);
    SeedSets seeds;
    double est_weighted = 0.0, est_simple = 0.0, est_degree = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const int s = side(assign_rng);
      if (s == 2) continue;
      const double sign = s == 0 ? 1.0 : -1.0;
      (s == 0 ? seeds.first : seeds.second).push_back(nodes[j]);
      est_weighted += sign * weighted.values[j];
      est_simple += sign * simple.values[j];
      est_degree += sign * centrality[nodes[j]];
    }

    const std::string stream = "payoff-error:mc:" + std::to_string(t);
    parallel_for_chunks(mc_rounds, [&](std::size_t begin, std::size_t end) {
      CascadeSimulator sim(g);
      for (std::size_t r = begin; r < end; ++r) {
        Rng rng = make_stream(seed, stream, r);
        diffs[r] = sim.run(seeds.first, seeds.second, rng).difference();
      }
    });
    double total = 0.0;
    for (long long d : diffs) total += static_cast<double>(d);
    const double truth = total / static_cast<double>(mc_rounds);

    out.weighted += std::abs(truth - est_weighted);
    out.simple += std::abs(truth - est_simple);
    out.degree += std::abs(truth - est_degree);
  }
  const double count = static_cast<double>(trials);
  out.weighted /= count;
  out.simple /= count;
  out.degree /= count;
  return out;
}

}  // namespace cim
