#include "cim/harness.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace cim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

json header(const RunConfig& cfg) {
  return {{"tool", "cimsolve"},
          {"version", kToolVersion},
          {"seed", cfg.seed},
          {"config", cfg.to_json()}};
}

// Comment lines that open every CSV file.
std::string csv_preamble(const RunConfig& cfg) {
  return "# cimsolve " + std::string(kToolVersion) + " seed=" + std::to_string(cfg.seed) +
         "\n# config " + cfg.to_json().dump() + "\n";
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string hex64(std::uint64_t x) {
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << x;
  return s.str();
}

std::vector<std::int64_t> external_ids(const Graph& g, std::span<const NodeId> nodes) {
  std::vector<std::int64_t> ids;
  ids.reserve(nodes.size());
  for (NodeId v : nodes) ids.push_back(g.external_id(v));
  return ids;
}

Player player_from(int p) {
  if (p == 1) return Player::kOne;
  if (p == 2) return Player::kTwo;
  throw Error("player must be 1 or 2");
}

// Player's initial Double Oracle action: 1each when the game allows it,
// otherwise the reply to an opponent who bids nothing.
Allocation initial_action(const GameSpec& spec, Player p, std::ostream& log) {
  if (spec.player(p).packages.contains(1) &&
      spec.node_count() >= static_cast<std::size_t>(spec.player(p).budget)) {
    return gen_oneeach(spec, p);
  }
  log << "note: 1each is infeasible for player " << index(p) + 1
      << "; starting from the reply to an empty allocation\n";
  const Allocation empty(std::vector<Amount>(spec.node_count(), 0));
  return best_response(MixedStrategy::pure(empty), spec, p).allocation;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

json RunConfig::to_json() const {
  return {{"graph", graph},
          {"undirected", undirected},
          {"prob", prob},
          {"theta", theta ? json(*theta) : json(nullptr)},
          {"k1", k1},
          {"k2", k2},
          {"d1", d1},
          {"d2", d2},
          {"n", n},
          {"epsilon", epsilon},
          {"max_iters", max_iters},
          {"rounds", rounds},
          {"seed", seed},
          {"out", out},
          {"dataset", dataset_name()},
          {"p1", p1},
          {"p2", p2},
          {"equilibrium", equilibrium},
          {"target", target},
          {"player", player},
          {"trials", trials},
          {"mc_rounds", mc_rounds}};
}

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object()) throw Error("config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "graph") c.graph = v.get<std::string>();
      else if (key == "undirected") c.undirected = v.get<bool>();
      else if (key == "prob") c.prob = v.get<std::string>();
      else if (key == "theta") c.theta = v.is_null() ? std::nullopt : std::optional(v.get<std::size_t>());
      else if (key == "k") c.k1 = c.k2 = v.get<Amount>();
      else if (key == "k1") c.k1 = v.get<Amount>();
      else if (key == "k2") c.k2 = v.get<Amount>();
      else if (key == "d") c.d1 = c.d2 = v.get<std::string>();
      else if (key == "d1") c.d1 = v.get<std::string>();
      else if (key == "d2") c.d2 = v.get<std::string>();
      else if (key == "n") c.n = v.get<std::size_t>();
      else if (key == "epsilon") c.epsilon = v.get<double>();
      else if (key == "max_iters") c.max_iters = v.get<int>();
      else if (key == "rounds") c.rounds = v.get<std::size_t>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "dataset") c.dataset = v.get<std::string>();
      else if (key == "p1") c.p1 = v.get<std::string>();
      else if (key == "p2") c.p2 = v.get<std::string>();
      else if (key == "equilibrium") c.equilibrium = v.get<std::string>();
      else if (key == "target") c.target = v.get<std::string>();
      else if (key == "player") c.player = v.get<int>();
      else if (key == "trials") c.trials = v.get<std::size_t>();
      else if (key == "mc_rounds") c.mc_rounds = v.get<std::size_t>();
      else if (key == "threads") c.threads = v.get<int>();
      else throw Error("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(std::string("bad config value: ") + e.what());
  }
  return c;
}

std::string RunConfig::dataset_name() const {
  if (!dataset.empty()) return dataset;
  const std::string stem = fs::path(graph).stem().string();
  return stem.empty() ? "graph" : stem;
}

fs::path RunConfig::run_dir() const {
  std::string k = "k" + std::to_string(k1);
  if (k2 != k1) k += "-" + std::to_string(k2);
  return fs::path(out) / (dataset_name() + "-" + k + "-n" + std::to_string(n) + "-s" +
                          std::to_string(seed));
}

fs::path RunConfig::cache_dir() const { return fs::path(out) / "cache"; }

json to_json(const Allocation& a) { return a.amounts; }

Allocation allocation_from_json(const json& j) {
  try {
    return Allocation(j.get<std::vector<Amount>>());
  } catch (const json::exception& e) {
    throw Error(std::string("bad allocation: ") + e.what());
  }
}

json to_json(const MixedStrategy& m) {
  json support = json::array();
  for (const auto& a : m.support()) support.push_back(to_json(a));
  return {{"support", support},
          {"probs", std::vector<double>(m.probs().begin(), m.probs().end())}};
}

MixedStrategy mixed_from_json(const json& j) {
  try {
    std::vector<Allocation> support;
    for (const auto& a : j.at("support")) support.push_back(allocation_from_json(a));
    return MixedStrategy(std::move(support), j.at("probs").get<std::vector<double>>());
  } catch (const json::exception& e) {
    throw Error(std::string("bad mixed strategy: ") + e.what());
  }
}

json influence_to_json(const InfluenceValues& v, const Graph& g) {
  json arr = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    arr.push_back({{"node_id", g.external_id(v.nodes[i])}, {"value", v.values[i]}});
  }
  return arr;
}

LoadedEquilibrium load_equilibrium(const fs::path& path) {
  const json j = read_json(path);
  LoadedEquilibrium out;
  try {
    out.node_ids = j.at("nodes").get<std::vector<std::int64_t>>();
    out.game_value = j.at("game_value").get<double>();
    out.nash1 = mixed_from_json(j.at("nash1"));
    out.nash2 = mixed_from_json(j.at("nash2"));
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
  return out;
}

Instance prepare_instance(const RunConfig& cfg, std::ostream* log) {
  if (cfg.graph.empty()) throw Error("no graph given (--graph)");
  if (cfg.n < 1) throw Error("n must be >= 1");
  Instance inst;
  inst.graph = assign_probabilities(load_edge_list(cfg.graph, !cfg.undirected),
                                    ProbabilitySpec::parse(cfg.prob));
  const std::size_t theta = cfg.theta.value_or(100 * inst.graph.node_count());
  if (theta < 1) throw Error("theta must be >= 1");
  if (cfg.n > inst.graph.node_count()) {
    throw Error("n=" + std::to_string(cfg.n) + " exceeds the node count " +
                std::to_string(inst.graph.node_count()));
  }
  if (log != nullptr && cfg.n < static_cast<std::size_t>(std::max(cfg.k1, cfg.k2))) {
    *log << "warning: n=" << cfg.n << " is smaller than the budget k="
         << std::max(cfg.k1, cfg.k2) << "\n";
  }

  const std::uint64_t fp = inst.graph.fingerprint();
  const fs::path cache = cfg.cache_dir() / (hex64(fp) + "-t" + std::to_string(theta) +
                                            "-s" + std::to_string(cfg.seed) + ".rrx");
  if (auto cached = load_index_if_matches(cache, fp, theta, cfg.seed)) {
    inst.index = std::move(*cached);
    inst.cache_hit = true;
  } else {
    inst.index = build_index(inst.graph, theta, cfg.seed);
    fs::create_directories(cache.parent_path());
    save_index(inst.index, cache);
  }

  const std::vector<NodeId> nodes = select_seeds(inst.index, cfg.n);
  inst.values = estimate_values(inst.index, nodes);
  inst.spec = GameSpec(inst.values, {cfg.k1, PackageSet::parse(cfg.d1, cfg.k1)},
                       {cfg.k2, PackageSet::parse(cfg.d2, cfg.k2)});
  return inst;
}

void resolve_equilibria(StrategySpec& spec, const GameSpec& game, const Graph& g,
                        const fs::path& default_path) {
  if (spec.kind == StrategySpec::Kind::kBestResponseTo) {
    StrategySpec target = *spec.target;
    resolve_equilibria(target, game, g, default_path);
    spec.target = std::make_shared<const StrategySpec>(std::move(target));
    return;
  }
  if (spec.kind != StrategySpec::Kind::kNashMixed || spec.nash) return;
  const fs::path path = spec.nash_path.empty() ? default_path : fs::path(spec.nash_path);
  LoadedEquilibrium eq = load_equilibrium(path);
  if (eq.node_ids != external_ids(g, game.nodes())) {
    throw Error("equilibrium " + path.string() +
                " was solved over a different influential node set");
  }
  spec.nash = std::make_pair(std::move(eq.nash1), std::move(eq.nash2));
}

InfluenceValues cmd_seeds(const RunConfig& cfg, std::ostream& log) {
  const Instance inst = prepare_instance(cfg, &log);
  json j = header(cfg);
  j["theta"] = inst.index.theta();
  j["graph_nodes"] = inst.graph.node_count();
  j["graph_edges"] = inst.graph.edge_count();
  j["graph_fingerprint"] = hex64(inst.graph.fingerprint());
  j["spread_estimate"] = estimate_spread(inst.index, inst.values.nodes);
  j["nodes"] = influence_to_json(inst.values, inst.graph);
  write_json(cfg.run_dir() / "values.json", j);
  log << "seeds: " << inst.values.size() << " nodes, theta=" << inst.index.theta()
      << (inst.cache_hit ? " (cached index)" : "") << ", spread estimate "
      << format_double(j["spread_estimate"].get<double>()) << "\n";
  return inst.values;
}

SolveOutcome cmd_solve(const RunConfig& cfg, std::ostream& log) {
  const Instance inst = prepare_instance(cfg, &log);
  const GameSpec& spec = inst.spec;
  SolveOutcome out;
  out.init1 = initial_action(spec, Player::kOne, log);
  out.init2 = initial_action(spec, Player::kTwo, log);

  DoubleOracleOptions opts;
  opts.epsilon = cfg.epsilon;
  opts.max_iterations = cfg.max_iters;
  out.result = double_oracle(spec, out.init1, out.init2, opts);
  const EquilibriumResult& r = out.result;

  json values = header(cfg);
  values["theta"] = inst.index.theta();
  values["spread_estimate"] = estimate_spread(inst.index, inst.values.nodes);
  values["nodes"] = influence_to_json(inst.values, inst.graph);
  write_json(cfg.run_dir() / "values.json", values);

  json j = header(cfg);
  j["nodes"] = external_ids(inst.graph, spec.nodes());
  j["values"] = std::vector<double>(spec.values().begin(), spec.values().end());
  j["game_value"] = r.game_value;
  j["gap"] = r.gap;
  j["iterations"] = r.iterations;
  j["termination"] = std::string(to_string(r.termination));
  j["converged"] = r.converged();
  j["init1"] = to_json(out.init1);
  j["init2"] = to_json(out.init2);
  j["nash1"] = to_json(r.nash1);
  j["nash2"] = to_json(r.nash2);
  j["wall_time_s"] = r.wall_time_s;
  write_json(cfg.run_dir() / "equilibrium.json", j);

  std::string csv = csv_preamble(cfg);
  csv += "iteration,v1,v2,gap,restricted_value,rows,cols,support1,support2\n";
  for (const auto& t : r.trace) {
    csv += std::to_string(t.iteration) + "," + format_double(t.v1) + "," +
           format_double(t.v2) + "," + format_double(t.v1 - t.v2) + "," +
           format_double(t.restricted_value) + "," + std::to_string(t.rows) + "," +
           std::to_string(t.cols) + "," + std::to_string(t.support1) + "," +
           std::to_string(t.support2) + "\n";
  }
  write_text(cfg.run_dir() / "trace.csv", csv);

  log << "solve: value " << format_double(r.game_value) << ", gap " << format_double(r.gap)
      << ", " << r.iterations << " iterations, " << to_string(r.termination) << "\n";
  if (!r.converged()) log << "warning: Double Oracle stopped at max_iters\n";
  return out;
}

BestResponse cmd_br(const RunConfig& cfg, std::ostream& log) {
  const Instance inst = prepare_instance(cfg, &log);
  const Player responder = player_from(cfg.player);
  StrategySpec target = StrategySpec::parse(cfg.target);
  const fs::path eq_path =
      cfg.equilibrium.empty() ? cfg.run_dir() / "equilibrium.json" : fs::path(cfg.equilibrium);
  resolve_equilibria(target, inst.spec, inst.graph, eq_path);

  Rng rng = make_stream(cfg.seed, "strategy:br:br(" + target.name() + ")",
                        static_cast<std::uint64_t>(index(responder)));
  const BestResponse br = gen_best_response_to(target, inst.spec, responder,
                                               target.samples, rng);
  json j = header(cfg);
  j["target"] = target.name();
  j["player"] = cfg.player;
  j["nodes"] = external_ids(inst.graph, inst.spec.nodes());
  j["allocation"] = to_json(br.allocation);
  j["payoff"] = br.payoff;
  write_json(cfg.run_dir() / ("br-p" + std::to_string(cfg.player) + ".json"), j);
  log << "br: " << br.allocation.to_string() << " payoff " << format_double(br.payoff)
      << " against " << target.name() << "\n";
  return br;
}

CompetitionStats cmd_simulate(const RunConfig& cfg, std::ostream& log) {
  if (cfg.rounds < 1) throw Error("rounds must be >= 1");
  const Instance inst = prepare_instance(cfg, &log);
  const fs::path eq_path =
      cfg.equilibrium.empty() ? cfg.run_dir() / "equilibrium.json" : fs::path(cfg.equilibrium);
  StrategySpec s1 = StrategySpec::parse(cfg.p1);
  StrategySpec s2 = StrategySpec::parse(cfg.p2);
  resolve_equilibria(s1, inst.spec, inst.graph, eq_path);
  resolve_equilibria(s2, inst.spec, inst.graph, eq_path);
  const StrategySampler first(s1, inst.spec, Player::kOne, cfg.seed);
  const StrategySampler second(s2, inst.spec, Player::kTwo, cfg.seed);

  const CompetitionStats st =
      run_competition(inst.graph, inst.spec, first, second, cfg.rounds, cfg.seed);

  const fs::path path = cfg.run_dir() / "stats.csv";
  const bool fresh = !fs::exists(path);
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (fresh) {
    out << "# cimsolve " << kToolVersion << "\n"
        << "strategy1,strategy2,k1,k2,n,rounds,win_pct,draw_pct,avg,std,seed,version,config\n";
  }
  out << first.name() << "," << second.name() << "," << cfg.k1 << "," << cfg.k2 << ","
      << cfg.n << "," << st.rounds << "," << format_double(st.win_pct) << ","
      << format_double(st.draw_pct) << "," << format_double(st.avg) << ","
      << format_double(st.std) << "," << st.seed << "," << kToolVersion << ","
      << csv_quote(cfg.to_json().dump()) << "\n";
  if (!out) throw Error("cannot write " + path.string());

  log << "simulate: " << first.name() << " vs " << second.name() << ": win "
      << format_double(st.win_pct) << "%, draw " << format_double(st.draw_pct) << "%, avg "
      << format_double(st.avg) << ", std " << format_double(st.std) << "\n";
  return st;
}

PayoffErrors cmd_eval_payoff(const RunConfig& cfg, std::ostream& log) {
  const Instance inst = prepare_instance(cfg, &log);
  const PayoffErrors e = payoff_error_experiment(inst.graph, inst.index, inst.values.nodes,
                                                 cfg.trials, cfg.mc_rounds, cfg.undirected,
                                                 cfg.seed);
  std::string csv = csv_preamble(cfg);
  csv += "method,mean_abs_error,trials,mc_rounds,n,seed\n";
  const std::pair<const char*, double> rows[] = {
      {"weighted", e.weighted}, {"simple", e.simple}, {"degree", e.degree}};
  for (const auto& [name, err] : rows) {
    csv += std::string(name) + "," + format_double(err) + "," + std::to_string(e.trials) +
           "," + std::to_string(cfg.mc_rounds) + "," + std::to_string(cfg.n) + "," +
           std::to_string(cfg.seed) + "\n";
    log << "eval-payoff: " << name << " " << format_double(err) << "\n";
  }
  write_text(cfg.run_dir() / "payoff_error.csv", csv);
  return e;
}

}  // namespace cim
