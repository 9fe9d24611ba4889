#pragma once

// Reverse reachable (RR) set sampling and the estimators built on it.
//
// An RR-set is sampled by picking a root uniformly at random and walking the
// transposed graph, admitting each in-neighbor w of a visited node u with
// probability P(w->u). A seed set S covers an RR-set when they intersect;
// N/theta times the number of covered sets estimates the expected spread of S.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "cim/common.hpp"
#include "cim/graph.hpp"
#include "cim/rng.hpp"

namespace cim {

// One RR-set: its root plus every admitted node, in admission order.
struct RRSet {
  NodeId root;
  std::vector<NodeId> nodes;
};

// Single RR-set sample. In the competitive variant, opponent seeds are
// admitted but their in-neighbors are not explored.
RRSet sample_rr_set(const Graph& g, Rng& rng);
RRSet sample_competitive_rr_set(const Graph& g, std::span<const NodeId> opponent_seeds,
                                Rng& rng);

// Immutable collection of theta RR-sets plus the node -> set inverted index.
// Each set is stored sorted by node index.
class RRIndex {
 public:
  RRIndex() = default;

  std::size_t theta() const { return roots_.size(); }
  std::size_t node_count() const { return node_count_; }
  std::uint64_t graph_fingerprint() const { return graph_fingerprint_; }
  std::uint64_t seed() const { return seed_; }

  NodeId root(std::size_t r) const { return roots_[r]; }
  std::span<const NodeId> set(std::size_t r) const {
    return {members_.data() + set_offsets_[r], members_.data() + set_offsets_[r + 1]};
  }
  // Indices of the RR-sets containing `node`, ascending.
  std::span<const std::uint32_t> coverage(NodeId node) const {
    return {covering_.data() + cover_offsets_[node],
            covering_.data() + cover_offsets_[node + 1]};
  }
  std::size_t total_size() const { return members_.size(); }

  // Scale factor N / theta.
  double scale() const {
    return static_cast<double>(node_count_) / static_cast<double>(theta());
  }

  static RRIndex from_sets(std::size_t node_count, std::vector<RRSet> sets,
                           std::uint64_t graph_fingerprint = 0,
                           std::uint64_t seed = 0);
  // offsets has theta+1 entries; each set's slice must already be sorted.
  static RRIndex from_flat(std::size_t node_count, std::vector<NodeId> roots,
                           std::vector<std::size_t> offsets,
                           std::vector<NodeId> members,
                           std::uint64_t graph_fingerprint, std::uint64_t seed);

  friend bool operator==(const RRIndex&, const RRIndex&) = default;

 private:
  void build_coverage();

  std::size_t node_count_ = 0;
  std::uint64_t graph_fingerprint_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<NodeId> roots_;
  std::vector<std::size_t> set_offsets_{0};
  std::vector<NodeId> members_;
  std::vector<std::size_t> cover_offsets_;
  std::vector<std::uint32_t> covering_;
};

// Samples theta RR-sets. Set r is drawn from a stream keyed by
// (seed, "rrset", r / kRRBlockSize), so the result is independent of the
// worker count. With non-empty `opponent_seeds` the sets are competitive.
inline constexpr std::size_t kRRBlockSize = 2048;
RRIndex build_index(const Graph& g, std::size_t theta, std::uint64_t seed);
RRIndex build_competitive_index(const Graph& g, std::size_t theta,
                                std::span<const NodeId> opponent_seeds,
                                std::uint64_t seed);

// (N/theta) * |{r : r intersects seeds}|
double estimate_spread(const RRIndex& idx, std::span<const NodeId> seeds);

// Greedy max-coverage: n picks, each the node covering the most not yet
// covered sets, lowest index on ties. Returns nodes in pick order.
std::vector<NodeId> select_seeds(const RRIndex& idx, std::size_t n);

struct InfluenceValues {
  std::vector<NodeId> nodes;
  std::vector<double> values;

  std::size_t size() const { return nodes.size(); }
  double total() const;
};

// Each covered set carries weight 1/|S cap r|, split across its members in
// S; value(s) = (N/theta) * sum of the weights of the sets s covers. The
// values of S sum to estimate_spread(idx, S).
InfluenceValues estimate_values(const RRIndex& idx, std::span<const NodeId> nodes);

// value(s) = (N/theta) * C({s}); counts shared sets once per member.
InfluenceValues estimate_values_simple(const RRIndex& idx,
                                       std::span<const NodeId> nodes);

// Binary cache: magic, version, graph fingerprint, theta, seed, node count,
// then per set (root, length, nodes...). All integers little-endian.
void save_index(const RRIndex& idx, const std::filesystem::path& path);
RRIndex load_index(const std::filesystem::path& path);

// Loads `path` if it exists, parses and matches the key, otherwise nullopt.
std::optional<RRIndex> load_index_if_matches(const std::filesystem::path& path,
                                             std::uint64_t graph_fingerprint,
                                             std::size_t theta, std::uint64_t seed);

}  // namespace cim
