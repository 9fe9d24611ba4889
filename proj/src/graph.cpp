#include "cim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace cim {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view field, T& out) {
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

ProbabilitySpec ProbabilitySpec::parse(std::string_view text) {
  ProbabilitySpec spec;
  if (text == "indegree") {
    spec.scheme = ProbabilityScheme::kInDegree;
  } else if (text == "file") {
    spec.scheme = ProbabilityScheme::kFile;
  } else if (text.starts_with("const:")) {
    spec.scheme = ProbabilityScheme::kConstant;
    if (!parse_number(text.substr(6), spec.constant)) {
      throw Error("bad constant probability: " + std::string(text));
    }
    if (!(spec.constant >= 0.0 && spec.constant <= 1.0)) {
      throw Error("constant probability must lie in [0,1]: " +
                  std::string(text));
    }
  } else {
    throw Error("unknown probability scheme: " + std::string(text));
  }
  return spec;
}

std::string ProbabilitySpec::to_string() const {
  switch (scheme) {
    case ProbabilityScheme::kInDegree:
      return "indegree";
    case ProbabilityScheme::kFile:
      return "file";
    case ProbabilityScheme::kConstant: {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), constant);
      return "const:" + std::string(buf, ptr);
    }
  }
  return {};
}

Graph Graph::from_edges(std::size_t node_count, std::vector<EdgeRecord> edges,
                        std::vector<std::int64_t> external_ids,
                        bool has_file_probs) {
  if (node_count == 0) throw Error("graph has no nodes");
  if (external_ids.empty()) {
    external_ids.resize(node_count);
    std::iota(external_ids.begin(), external_ids.end(), 0);
  }
  if (external_ids.size() != node_count) {
    throw Error("external id table does not match node count");
  }
  for (const auto& e : edges) {
    if (e.source >= node_count || e.target >= node_count) {
      throw Error("edge endpoint out of range");
    }
    if (!(e.prob >= 0.0 && e.prob <= 1.0)) {
      throw Error("edge probability outside [0,1]");
    }
  }
  std::erase_if(edges, [](const EdgeRecord& e) { return e.source == e.target; });
  // Stable so that the first occurrence of a duplicate survives.
  std::stable_sort(edges.begin(), edges.end(),
                   [](const EdgeRecord& a, const EdgeRecord& b) {
                     return std::tie(a.source, a.target) <
                            std::tie(b.source, b.target);
                   });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const EdgeRecord& a, const EdgeRecord& b) {
                            return a.source == b.source && a.target == b.target;
                          }),
              edges.end());

  Graph g;
  g.external_ids_ = std::move(external_ids);
  g.has_file_probs_ = has_file_probs;
  const std::size_t m = edges.size();

  g.out_offsets_.assign(node_count + 1, 0);
  g.in_offsets_.assign(node_count + 1, 0);
  for (const auto& e : edges) {
    ++g.out_offsets_[e.source + 1];
    ++g.in_offsets_[e.target + 1];
  }
  std::partial_sum(g.out_offsets_.begin(), g.out_offsets_.end(),
                   g.out_offsets_.begin());
  std::partial_sum(g.in_offsets_.begin(), g.in_offsets_.end(),
                   g.in_offsets_.begin());

  g.out_targets_.resize(m);
  g.out_probs_.resize(m);
  g.in_sources_.resize(m);
  g.in_probs_.resize(m);
  // Edges are sorted by source, so out-lists come out sorted by target.
  for (std::size_t i = 0; i < m; ++i) {
    g.out_targets_[i] = edges[i].target;
    g.out_probs_[i] = edges[i].prob;
  }
  std::vector<std::size_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (const auto& e : edges) {
    const std::size_t slot = cursor[e.target]++;
    g.in_sources_[slot] = e.source;
    g.in_probs_[slot] = e.prob;
  }
  if (has_file_probs) g.file_probs_ = g.out_probs_;
  return g;
}

std::optional<NodeId> Graph::find_node(std::int64_t external_id) const {
  auto it = std::find(external_ids_.begin(), external_ids_.end(), external_id);
  if (it == external_ids_.end()) return std::nullopt;
  return static_cast<NodeId>(it - external_ids_.begin());
}

std::optional<double> Graph::edge_prob(NodeId u, NodeId v) const {
  auto targets = out_neighbors(u);
  auto it = std::lower_bound(targets.begin(), targets.end(), v);
  if (it == targets.end() || *it != v) return std::nullopt;
  return out_probs(u)[static_cast<std::size_t>(it - targets.begin())];
}

std::vector<EdgeRecord> Graph::edges() const {
  std::vector<EdgeRecord> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    auto targets = out_neighbors(u);
    auto probs = out_probs(u);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      out.push_back({u, targets[i], probs[i]});
    }
  }
  return out;
}

std::uint64_t Graph::fingerprint() const {
  std::uint64_t h = kFnvOffset;
  const std::uint64_t n = node_count();
  h = fnv1a(&n, sizeof(n), h);
  h = fnv1a(external_ids_.data(), external_ids_.size() * sizeof(std::int64_t), h);
  h = fnv1a(out_offsets_.data(), out_offsets_.size() * sizeof(std::size_t), h);
  h = fnv1a(out_targets_.data(), out_targets_.size() * sizeof(NodeId), h);
  h = fnv1a(out_probs_.data(), out_probs_.size() * sizeof(double), h);
  return h;
}

Graph parse_edge_list(std::string_view text, bool directed) {
  struct RawEdge {
    std::int64_t u, v;
    double p;
  };
  std::vector<RawEdge> raw;
  std::optional<bool> third_column;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    RawEdge e{0, 0, 1.0};
    if ((fields.size() != 2 && fields.size() != 3) ||
        !parse_number(fields[0], e.u) || !parse_number(fields[1], e.v) ||
        (fields.size() == 3 && !parse_number(fields[2], e.p))) {
      throw Error("parse error at line " + std::to_string(line_no) + ": '" +
                  std::string(line) + "'");
    }
    if (fields.size() == 3 && !(e.p >= 0.0 && e.p <= 1.0)) {
      throw Error("probability outside [0,1] at line " +
                  std::to_string(line_no));
    }
    const bool has_third = fields.size() == 3;
    if (third_column && *third_column != has_third) third_column = false;
    else if (!third_column) third_column = has_third;
    raw.push_back(e);
    if (end == text.size()) break;
  }
  std::erase_if(raw, [](const RawEdge& e) { return e.u == e.v; });
  if (raw.empty()) throw Error("edge list contains no edges");

  std::vector<std::int64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& e : raw) {
    ids.push_back(e.u);
    ids.push_back(e.v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto index_of = [&ids](std::int64_t id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) -
                               ids.begin());
  };

  std::vector<EdgeRecord> edges;
  edges.reserve(directed ? raw.size() : raw.size() * 2);
  for (const auto& e : raw) {
    const NodeId u = index_of(e.u);
    const NodeId v = index_of(e.v);
    edges.push_back({u, v, e.p});
    if (!directed) edges.push_back({v, u, e.p});
  }
  const std::size_t n = ids.size();
  return Graph::from_edges(n, std::move(edges), std::move(ids),
                           third_column.value_or(false));
}

Graph load_edge_list(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open edge list: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return parse_edge_list(text, directed);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

Graph assign_probabilities(const Graph& g, const ProbabilitySpec& spec) {
  Graph out = g;
  switch (spec.scheme) {
    case ProbabilityScheme::kFile:
      if (!g.has_file_probs_) {
        throw Error("file probability scheme requires a third column on every "
                    "edge-list line");
      }
      out.out_probs_ = g.file_probs_;
      break;
    case ProbabilityScheme::kConstant:
      if (!(spec.constant >= 0.0 && spec.constant <= 1.0)) {
        throw Error("constant probability must lie in [0,1]");
      }
      std::fill(out.out_probs_.begin(), out.out_probs_.end(), spec.constant);
      break;
    case ProbabilityScheme::kInDegree:
      for (std::size_t i = 0; i < out.out_targets_.size(); ++i) {
        out.out_probs_[i] = 1.0 / static_cast<double>(g.in_degree(out.out_targets_[i]));
      }
      break;
  }
  // Rebuild the transposed probabilities from the forward ones.
  std::vector<std::size_t> cursor(out.in_offsets_.begin(),
                                  out.in_offsets_.end() - 1);
  for (NodeId u = 0; u < out.node_count(); ++u) {
    for (std::size_t e = out.out_offsets_[u]; e < out.out_offsets_[u + 1]; ++e) {
      const NodeId v = out.out_targets_[e];
      out.in_probs_[cursor[v]++] = out.out_probs_[e];
    }
  }
  return out;
}

void save_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write edge list: " + path.string());
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << "\n";
  char buf[64];
  for (const auto& e : g.edges()) {
    const auto res = std::to_chars(buf, buf + sizeof(buf), e.prob);
    out << g.external_id(e.source) << ' ' << g.external_id(e.target) << ' '
        << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)) << '\n';
  }
  if (!out) throw Error("write failed: " + path.string());
}

std::vector<double> degree_centrality(const Graph& g, bool undirected) {
  const std::size_t n = g.node_count();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  const double scale = 1.0 / static_cast<double>(n - 1);
  for (NodeId u = 0; u < n; ++u) {
    const std::size_t d = undirected ? g.out_degree(u)
                                     : g.out_degree(u) + g.in_degree(u);
    out[u] = static_cast<double>(d) * scale;
  }
  return out;
}

}  // namespace cim
