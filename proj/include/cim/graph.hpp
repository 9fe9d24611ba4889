#pragma once

// Directed influence graph in compressed sparse row form.
//
// Both the forward (out-neighbor) and the transposed (in-neighbor) adjacency
// are stored, each with the activation probability of the edge alongside the
// neighbor index. Nodes are dense indices 0..N-1; the external ids read from
// the edge-list file are kept for output.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cim/common.hpp"

namespace cim {

struct EdgeRecord {
  NodeId source;
  NodeId target;
  double prob;
};

enum class ProbabilityScheme { kInDegree, kConstant, kFile };

struct ProbabilitySpec {
  ProbabilityScheme scheme = ProbabilityScheme::kInDegree;
  double constant = 1.0;

  // "indegree", "const:0.1", "file".
  static ProbabilitySpec parse(std::string_view text);
  std::string to_string() const;
};

class Graph {
 public:
  Graph() = default;

  // Builds a graph over nodes 0..node_count-1. Self-loops are dropped and
  // duplicate (source, target) pairs collapse to the first occurrence.
  // `external_ids` may be empty, in which case ids equal dense indices.
  static Graph from_edges(std::size_t node_count, std::vector<EdgeRecord> edges,
                          std::vector<std::int64_t> external_ids = {},
                          bool has_file_probs = false);

  std::size_t node_count() const { return external_ids_.size(); }
  std::size_t edge_count() const { return out_targets_.size(); }

  std::span<const NodeId> out_neighbors(NodeId u) const {
    return {out_targets_.data() + out_offsets_[u],
            out_targets_.data() + out_offsets_[u + 1]};
  }
  std::span<const double> out_probs(NodeId u) const {
    return {out_probs_.data() + out_offsets_[u],
            out_probs_.data() + out_offsets_[u + 1]};
  }
  std::span<const NodeId> in_neighbors(NodeId v) const {
    return {in_sources_.data() + in_offsets_[v],
            in_sources_.data() + in_offsets_[v + 1]};
  }
  std::span<const double> in_probs(NodeId v) const {
    return {in_probs_.data() + in_offsets_[v],
            in_probs_.data() + in_offsets_[v + 1]};
  }

  std::size_t out_degree(NodeId u) const {
    return out_offsets_[u + 1] - out_offsets_[u];
  }
  std::size_t in_degree(NodeId v) const {
    return in_offsets_[v + 1] - in_offsets_[v];
  }

  std::int64_t external_id(NodeId u) const { return external_ids_[u]; }
  std::optional<NodeId> find_node(std::int64_t external_id) const;

  // Whether the probabilities read from a third edge-list column are present.
  bool has_file_probs() const { return has_file_probs_; }

  // Probability of edge u->v, or nullopt if there is no such edge.
  std::optional<double> edge_prob(NodeId u, NodeId v) const;

  // All edges in (source, target) order.
  std::vector<EdgeRecord> edges() const;

  // Content hash over node ids, topology and probability bits.
  std::uint64_t fingerprint() const;

 private:
  std::vector<std::int64_t> external_ids_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<double> out_probs_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
  std::vector<double> in_probs_;
  std::vector<double> file_probs_;  // parallel to out_targets_ when present
  bool has_file_probs_ = false;

  friend Graph assign_probabilities(const Graph& g, const ProbabilitySpec& spec);
};

// Reads a SNAP-style edge list: whitespace separated "u v [p]" lines, '#'
// comments. Node ids are compacted in ascending external id order. When
// `directed` is false every line yields both u->v and v->u.
Graph load_edge_list(const std::filesystem::path& path, bool directed);
Graph parse_edge_list(std::string_view text, bool directed);

// Returns a copy of `g` with edge probabilities set by `spec`.
Graph assign_probabilities(const Graph& g, const ProbabilitySpec& spec);

// Writes "u v p" lines with external ids and shortest round-trip
// probabilities. Reloading with directed=true and the file scheme restores
// the same graph.
void save_edge_list(const Graph& g, const std::filesystem::path& path);

// Normalized degree centrality, (in + out) / (N - 1). Graphs loaded from an
// undirected list store each edge twice, so `undirected` halves the count.
std::vector<double> degree_centrality(const Graph& g, bool undirected);

}  // namespace cim
