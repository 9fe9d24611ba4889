#include "cim/rrset.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>

#include "cim/parallel.hpp"

namespace cim {

static_assert(std::endian::native == std::endian::little,
              "RR-set cache I/O assumes a little-endian host");

namespace {

constexpr char kCacheMagic[8] = {'C', 'I', 'M', 'R', 'R', 'I', 'X', '\0'};
constexpr std::uint32_t kCacheVersion = 1;

// Reusable per-worker BFS state. `mark[v] == epoch` means visited in the
// current sample, so nothing is cleared between samples.
struct SamplerScratch {
  std::vector<std::uint32_t> mark;
  std::vector<std::uint8_t> stop;
  std::vector<NodeId> queue;
  std::uint32_t epoch = 0;

  SamplerScratch(const Graph& g, std::span<const NodeId> opponent_seeds)
      : mark(g.node_count(), 0), stop(g.node_count(), 0) {
    for (NodeId s : opponent_seeds) {
      if (s >= g.node_count()) throw Error("opponent seed out of range");
      stop[s] = 1;
    }
  }

  // Appends the sampled set (admission order) to `out`; returns the root.
  NodeId sample(const Graph& g, Rng& rng, std::vector<NodeId>& out) {
    if (++epoch == 0) {
      std::fill(mark.begin(), mark.end(), 0);
      epoch = 1;
    }
    std::uniform_int_distribution<NodeId> pick(
        0, static_cast<NodeId>(g.node_count() - 1));
    const NodeId root = pick(rng);
    queue.clear();
    queue.push_back(root);
    mark[root] = epoch;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId u = queue[head];
      if (stop[u]) continue;
      auto sources = g.in_neighbors(u);
      auto probs = g.in_probs(u);
      for (std::size_t i = 0; i < sources.size(); ++i) {
        const NodeId w = sources[i];
        if (mark[w] == epoch) continue;
        if (coin(rng, probs[i])) {
          mark[w] = epoch;
          queue.push_back(w);
        }
      }
    }
    out.insert(out.end(), queue.begin(), queue.end());
    return root;
  }
};

struct Block {
  std::vector<NodeId> roots;
  std::vector<std::size_t> offsets{0};
  std::vector<NodeId> members;
};

RRIndex build_impl(const Graph& g, std::size_t theta,
                   std::span<const NodeId> opponent_seeds, std::uint64_t seed,
                   const char* stream) {
  if (theta == 0) throw Error("theta must be at least 1");
  if (g.node_count() == 0) throw Error("cannot sample RR-sets on an empty graph");
  if (theta > std::numeric_limits<std::uint32_t>::max()) {
    throw Error("theta exceeds the 32-bit set index range");
  }
  const std::size_t blocks = (theta + kRRBlockSize - 1) / kRRBlockSize;
  std::vector<Block> out(blocks);

  parallel_for_chunks(blocks, [&](std::size_t begin, std::size_t end) {
    SamplerScratch scratch(g, opponent_seeds);
    for (std::size_t b = begin; b < end; ++b) {
      Rng rng = make_stream(seed, stream, b);
      Block& blk = out[b];
      const std::size_t first = b * kRRBlockSize;
      const std::size_t last = std::min(theta, first + kRRBlockSize);
      for (std::size_t r = first; r < last; ++r) {
        const std::size_t start = blk.members.size();
        blk.roots.push_back(scratch.sample(g, rng, blk.members));
        std::sort(blk.members.begin() + static_cast<std::ptrdiff_t>(start),
                  blk.members.end());
        blk.offsets.push_back(blk.members.size());
      }
    }
  });

  std::size_t total = 0;
  for (const auto& blk : out) total += blk.members.size();
  std::vector<NodeId> roots;
  std::vector<std::size_t> offsets{0};
  std::vector<NodeId> members;
  roots.reserve(theta);
  offsets.reserve(theta + 1);
  members.reserve(total);
  for (auto& blk : out) {
    const std::size_t base = members.size();
    roots.insert(roots.end(), blk.roots.begin(), blk.roots.end());
    for (std::size_t i = 1; i < blk.offsets.size(); ++i) {
      offsets.push_back(base + blk.offsets[i]);
    }
    members.insert(members.end(), blk.members.begin(), blk.members.end());
    blk = Block{};
  }
  return RRIndex::from_flat(g.node_count(), std::move(roots), std::move(offsets),
                            std::move(members), g.fingerprint(), seed);
}

}  // namespace

RRSet sample_rr_set(const Graph& g, Rng& rng) {
  SamplerScratch scratch(g, {});
  RRSet out;
  out.root = scratch.sample(g, rng, out.nodes);
  return out;
}

RRSet sample_competitive_rr_set(const Graph& g,
                                std::span<const NodeId> opponent_seeds, Rng& rng) {
  SamplerScratch scratch(g, opponent_seeds);
  RRSet out;
  out.root = scratch.sample(g, rng, out.nodes);
  return out;
}

RRIndex RRIndex::from_sets(std::size_t node_count, std::vector<RRSet> sets,
                           std::uint64_t graph_fingerprint, std::uint64_t seed) {
  std::vector<NodeId> roots;
  std::vector<std::size_t> offsets{0};
  std::vector<NodeId> members;
  for (auto& s : sets) {
    if (std::find(s.nodes.begin(), s.nodes.end(), s.root) == s.nodes.end()) {
      throw Error("RR-set does not contain its root");
    }
    std::sort(s.nodes.begin(), s.nodes.end());
    if (std::adjacent_find(s.nodes.begin(), s.nodes.end()) != s.nodes.end()) {
      throw Error("RR-set contains a repeated node");
    }
    roots.push_back(s.root);
    members.insert(members.end(), s.nodes.begin(), s.nodes.end());
    offsets.push_back(members.size());
  }
  return from_flat(node_count, std::move(roots), std::move(offsets),
                   std::move(members), graph_fingerprint, seed);
}

RRIndex RRIndex::from_flat(std::size_t node_count, std::vector<NodeId> roots,
                           std::vector<std::size_t> offsets,
                           std::vector<NodeId> members,
                           std::uint64_t graph_fingerprint, std::uint64_t seed) {
  if (node_count == 0) throw Error("RR index over an empty graph");
  if (offsets.size() != roots.size() + 1 || offsets.front() != 0 ||
      offsets.back() != members.size() ||
      !std::is_sorted(offsets.begin(), offsets.end())) {
    throw Error("inconsistent RR-set offsets");
  }
  for (NodeId v : members) {
    if (v >= node_count) throw Error("RR-set member out of range");
  }
  RRIndex idx;
  idx.node_count_ = node_count;
  idx.graph_fingerprint_ = graph_fingerprint;
  idx.seed_ = seed;
  idx.roots_ = std::move(roots);
  idx.set_offsets_ = std::move(offsets);
  idx.members_ = std::move(members);
  idx.build_coverage();
  return idx;
}

void RRIndex::build_coverage() {
  cover_offsets_.assign(node_count_ + 1, 0);
  for (NodeId v : members_) ++cover_offsets_[v + 1];
  std::partial_sum(cover_offsets_.begin(), cover_offsets_.end(),
                   cover_offsets_.begin());
  covering_.resize(members_.size());
  std::vector<std::size_t> cursor(cover_offsets_.begin(), cover_offsets_.end() - 1);
  for (std::size_t r = 0; r < theta(); ++r) {
    for (NodeId v : set(r)) covering_[cursor[v]++] = static_cast<std::uint32_t>(r);
  }
}

RRIndex build_index(const Graph& g, std::size_t theta, std::uint64_t seed) {
  return build_impl(g, theta, {}, seed, "rrset");
}

RRIndex build_competitive_index(const Graph& g, std::size_t theta,
                                std::span<const NodeId> opponent_seeds,
                                std::uint64_t seed) {
  return build_impl(g, theta, opponent_seeds, seed, "rrset-competitive");
}

double estimate_spread(const RRIndex& idx, std::span<const NodeId> seeds) {
  if (idx.theta() == 0) throw Error("empty RR index");
  std::vector<std::uint8_t> covered(idx.theta(), 0);
  std::size_t count = 0;
  for (NodeId s : seeds) {
    if (s >= idx.node_count()) throw Error("seed node out of range");
    for (std::uint32_t r : idx.coverage(s)) {
      if (!covered[r]) {
        covered[r] = 1;
        ++count;
      }
    }
  }
  return idx.scale() * static_cast<double>(count);
}

std::vector<NodeId> select_seeds(const RRIndex& idx, std::size_t n) {
  const std::size_t nodes = idx.node_count();
  if (n == 0) throw Error("seed count must be at least 1");
  if (n > nodes) {
    throw Error("seed count " + std::to_string(n) + " exceeds node count " +
                std::to_string(nodes));
  }
  std::vector<std::size_t> residual(nodes);
  for (NodeId v = 0; v < nodes; ++v) residual[v] = idx.coverage(v).size();
  std::vector<std::uint8_t> covered(idx.theta(), 0);
  std::vector<std::uint8_t> picked(nodes, 0);
  std::vector<NodeId> out;
  out.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    NodeId best = 0;
    bool found = false;
    for (NodeId v = 0; v < nodes; ++v) {
      if (picked[v]) continue;
      if (!found || residual[v] > residual[best]) {
        best = v;
        found = true;
      }
    }
    picked[best] = 1;
    out.push_back(best);
    for (std::uint32_t r : idx.coverage(best)) {
      if (covered[r]) continue;
      covered[r] = 1;
      for (NodeId m : idx.set(r)) --residual[m];
    }
  }
  return out;
}

double InfluenceValues::total() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

namespace {

void check_distinct(const RRIndex& idx, std::span<const NodeId> nodes) {
  if (nodes.empty()) throw Error("influential node set is empty");
  std::vector<std::uint8_t> seen(idx.node_count(), 0);
  for (NodeId s : nodes) {
    if (s >= idx.node_count()) throw Error("influential node out of range");
    if (seen[s]) throw Error("influential node set contains duplicates");
    seen[s] = 1;
  }
}

}  // namespace

InfluenceValues estimate_values(const RRIndex& idx, std::span<const NodeId> nodes) {
  check_distinct(idx, nodes);
  const std::size_t n = nodes.size();
  // overlap[r] = |S cap r|
  std::vector<std::uint32_t> overlap(idx.theta(), 0);
  for (NodeId s : nodes) {
    for (std::uint32_t r : idx.coverage(s)) ++overlap[r];
  }
  // shares[i][c]: sets covered by nodes[i] whose overlap with S is c. Keeping
  // integer counts makes sum(values) agree with the coverage count to rounding.
  std::vector<std::uint64_t> shares(n * (n + 1), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::uint32_t r : idx.coverage(nodes[i])) ++shares[i * (n + 1) + overlap[r]];
  }
  InfluenceValues out;
  out.nodes.assign(nodes.begin(), nodes.end());
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double weight = 0.0;
    for (std::size_t c = 1; c <= n; ++c) {
      const std::uint64_t k = shares[i * (n + 1) + c];
      if (k != 0) weight += static_cast<double>(k) / static_cast<double>(c);
    }
    out.values[i] = idx.scale() * weight;
  }
  return out;
}

InfluenceValues estimate_values_simple(const RRIndex& idx,
                                       std::span<const NodeId> nodes) {
  check_distinct(idx, nodes);
  InfluenceValues out;
  out.nodes.assign(nodes.begin(), nodes.end());
  for (NodeId s : nodes) {
    out.values.push_back(idx.scale() * static_cast<double>(idx.coverage(s).size()));
  }
  return out;
}

namespace {

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw Error("truncated RR-set cache file");
  return v;
}

}  // namespace

void save_index(const RRIndex& idx, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write RR cache: " + path.string());
  out.write(kCacheMagic, sizeof(kCacheMagic));
  write_pod(out, kCacheVersion);
  write_pod(out, idx.graph_fingerprint());
  write_pod(out, static_cast<std::uint64_t>(idx.theta()));
  write_pod(out, idx.seed());
  write_pod(out, static_cast<std::uint64_t>(idx.node_count()));
  for (std::size_t r = 0; r < idx.theta(); ++r) {
    auto s = idx.set(r);
    write_pod(out, idx.root(r));
    write_pod(out, static_cast<std::uint32_t>(s.size()));
    out.write(reinterpret_cast<const char*>(s.data()),
              static_cast<std::streamsize>(s.size() * sizeof(NodeId)));
  }
  if (!out) throw Error("write failed: " + path.string());
}

RRIndex load_index(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open RR cache: " + path.string());
  char magic[sizeof(kCacheMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0) {
    throw Error("not an RR-set cache file: " + path.string());
  }
  if (read_pod<std::uint32_t>(in) != kCacheVersion) {
    throw Error("unsupported RR cache version: " + path.string());
  }
  const auto fingerprint = read_pod<std::uint64_t>(in);
  const auto theta = read_pod<std::uint64_t>(in);
  const auto seed = read_pod<std::uint64_t>(in);
  const auto nodes = read_pod<std::uint64_t>(in);
  if (theta == 0 || nodes == 0) throw Error("corrupt RR cache header");
  std::vector<NodeId> roots;
  std::vector<std::size_t> offsets{0};
  std::vector<NodeId> members;
  roots.reserve(theta);
  offsets.reserve(theta + 1);
  for (std::uint64_t r = 0; r < theta; ++r) {
    roots.push_back(read_pod<NodeId>(in));
    const auto len = read_pod<std::uint32_t>(in);
    const std::size_t start = members.size();
    members.resize(start + len);
    in.read(reinterpret_cast<char*>(members.data() + start),
            static_cast<std::streamsize>(len * sizeof(NodeId)));
    if (!in) throw Error("truncated RR-set cache file");
    offsets.push_back(members.size());
  }
  return RRIndex::from_flat(nodes, std::move(roots), std::move(offsets),
                            std::move(members), fingerprint, seed);
}

std::optional<RRIndex> load_index_if_matches(const std::filesystem::path& path,
                                             std::uint64_t graph_fingerprint,
                                             std::size_t theta, std::uint64_t seed) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  RRIndex idx;
  try {
    idx = load_index(path);
  } catch (const Error&) {
    return std::nullopt;  // unreadable cache: treat as a miss
  }
  if (idx.graph_fingerprint() != graph_fingerprint || idx.theta() != theta ||
      idx.seed() != seed) {
    return std::nullopt;
  }
  return idx;
}

}  // namespace cim
