#pragma once

// Brute-force reference implementations used by the tests. They share no
// code with the library beyond the data types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <queue>
#include <vector>

#include "cim/game.hpp"
#include "cim/graph.hpp"
#include "cim/rng.hpp"
#include "cim/zero_sum.hpp"

namespace cim {
// Readable gtest failure messages.
inline void PrintTo(const Allocation& a, std::ostream* os) { *os << a.to_string(); }
}  // namespace cim

namespace cim::oracle {

// Every allocation over n nodes with amounts in {0} u D spending <= budget,
// in lexicographic order.
inline std::vector<Allocation> enumerate_actions(std::size_t n, Amount budget,
                                                 const PackageSet& packages) {
  std::vector<Allocation> out;
  std::vector<Amount> cur(n, 0);
  std::function<void(std::size_t, Amount)> rec = [&](std::size_t j, Amount left) {
    if (j == n) {
      out.emplace_back(cur);
      return;
    }
    cur[j] = 0;
    rec(j + 1, left);
    for (Amount d : packages.values()) {
      if (d > left) break;
      cur[j] = d;
      rec(j + 1, left - d);
    }
    cur[j] = 0;
  };
  rec(0, budget);
  return out;
}

inline std::vector<Allocation> enumerate_actions(const GameSpec& spec, Player p) {
  return enumerate_actions(spec.node_count(), spec.player(p).budget,
                           spec.player(p).packages);
}

// Plain double loop, node by node.
inline double payoff(const Allocation& mine, const Allocation& theirs,
                     std::span<const double> values) {
  double s = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (mine.amounts[j] > theirs.amounts[j]) s += values[j];
    if (mine.amounts[j] < theirs.amounts[j]) s -= values[j];
  }
  return s;
}

inline double payoff(const Allocation& mine, const MixedStrategy& q,
                     std::span<const double> values) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    s += q.probs()[i] * payoff(mine, q.support()[i], values);
  }
  return s;
}

struct BruteBest {
  double payoff = -std::numeric_limits<double>::infinity();
  std::vector<Allocation> argmax;  // all actions within tol of the best
};

inline BruteBest best_response(const MixedStrategy& q, const GameSpec& spec, Player p,
                               double tol = 1e-9) {
  BruteBest out;
  const auto actions = enumerate_actions(spec, p);
  std::vector<double> pays;
  for (const auto& a : actions) {
    pays.push_back(payoff(a, q, spec.values()));
    out.payoff = std::max(out.payoff, pays.back());
  }
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (pays[i] >= out.payoff - tol) out.argmax.push_back(actions[i]);
  }
  return out;
}

// Full payoff matrix, player 1 rows.
inline PayoffMatrix full_matrix(const GameSpec& spec) {
  const auto rows = enumerate_actions(spec, Player::kOne);
  const auto cols = enumerate_actions(spec, Player::kTwo);
  std::vector<double> data;
  for (const auto& a : rows) {
    for (const auto& b : cols) data.push_back(payoff(a, b, spec.values()));
  }
  return PayoffMatrix(rows.size(), cols.size(), std::move(data));
}

// Nodes reachable from s along edges with positive probability, s included.
inline std::size_t reach_count(const Graph& g, NodeId s) {
  std::vector<char> seen(g.node_count(), 0);
  std::queue<NodeId> q;
  q.push(s);
  seen[s] = 1;
  std::size_t count = 0;
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    ++count;
    const auto targets = g.out_neighbors(u);
    const auto probs = g.out_probs(u);
    for (std::size_t e = 0; e < targets.size(); ++e) {
      if (probs[e] > 0.0 && !seen[targets[e]]) {
        seen[targets[e]] = 1;
        q.push(targets[e]);
      }
    }
  }
  return count;
}

// Directed G(n, p) with constant edge probability.
inline Graph random_graph(std::size_t n, double density, double prob, Rng& rng) {
  std::vector<EdgeRecord> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = 0; v < n; ++v) {
      if (u != v && coin(rng, density)) edges.push_back({u, v, prob});
    }
  }
  return Graph::from_edges(n, std::move(edges));
}

inline InfluenceValues make_values(std::vector<double> values) {
  InfluenceValues v;
  v.values = std::move(values);
  for (std::size_t i = 0; i < v.values.size(); ++i) v.nodes.push_back(static_cast<NodeId>(i));
  return v;
}

inline GameSpec make_game(std::vector<double> values, Amount k1, PackageSet d1, Amount k2,
                          PackageSet d2) {
  return GameSpec(make_values(std::move(values)), {k1, std::move(d1)}, {k2, std::move(d2)});
}

// Random mixed strategy for player p with the given support size (fewer if
// the action space is smaller).
inline MixedStrategy random_mixed(const GameSpec& spec, Player p, std::size_t support,
                                  Rng& rng) {
  auto actions = enumerate_actions(spec, p);
  std::shuffle(actions.begin(), actions.end(), rng);
  actions.resize(std::min(support, actions.size()));
  std::vector<double> w(actions.size());
  double sum = 0.0;
  for (double& x : w) {
    x = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    sum += x;
  }
  for (double& x : w) x /= sum;
  return MixedStrategy(std::move(actions), std::move(w));
}

}  // namespace cim::oracle
