#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dsspan/dfs_code.hpp"
#include "dsspan/graph.hpp"
#include "dsspan/isomorphism.hpp"
#include "dsspan/numeric.hpp"
#include "dsspan/pattern.hpp"

namespace dsspan {

struct MinerConfig {
  double delta = 0.1;                  // relative support threshold in (0, 1]
  int min_cov = 3;                     // per-graph minimum coverage
  std::optional<double> gamma = 2.0;   // eligibility cap factor; nullopt disables the cap
  std::optional<int> max_edges;        // nullopt: unlimited pattern size
  int automorphism_cap = 4096;         // per (pattern, graph) embedding-list bound

  void check() const {
    if (!(delta > 0.0 && delta <= 1.0)) throw Error("delta must be in (0, 1]");
    if (min_cov < 1) throw Error("min_cov must be >= 1");
    if (gamma && *gamma < 1.0) throw Error("gamma must be >= 1");
    if (max_edges && *max_edges < 1) throw Error("max_edges must be >= 1");
    if (automorphism_cap < 1) throw Error("automorphism_cap must be >= 1");
  }
};

inline int support_threshold(double delta, int n) {
  return exact_ceil_product(delta, n);
}

// Per-graph coverage counters plus the shrinking eligibility mask.
struct CoverageState {
  std::vector<int> cov;
  std::vector<char> eligible;
  int eligible_count = 0;

  void init(int n) {
    cov.assign(static_cast<std::size_t>(n), 0);
    eligible.assign(static_cast<std::size_t>(n), 1);
    eligible_count = n;
  }

  bool any_eligible() const { return eligible_count > 0; }

  void remove(int gid) {
    if (eligible[static_cast<std::size_t>(gid)]) {
      eligible[static_cast<std::size_t>(gid)] = 0;
      --eligible_count;
    }
  }
};

struct MiningStats {
  long long extensions_generated = 0;
  long long canonical_tests = 0;
  long long patterns_accepted = 0;
  double wall_seconds = 0.0;
};

struct MiningResult {
  MinerConfig config;
  std::string dataset_name;
  int graph_count = 0;
  int threshold = 0;  // ceil(delta * N)
  bool cap_enabled = false;
  std::vector<PatternRecord> candidates;
  std::vector<std::uint8_t> filler_flags;  // parallel to candidates
  std::vector<int> final_coverage;
  std::vector<int> uncoverable_graphs;
  MiningStats stats;

  int candidate_count() const { return static_cast<int>(candidates.size()); }
  int filler_count() const {
    int c = 0;
    for (auto f : filler_flags) c += f != 0;
    return c;
  }
};

namespace miner_detail {

struct MineContext {
  const GraphDataset& ds;
  const MinerConfig& cfg;
  bool capped;
  int threshold;
  int cap_value;  // graphs at cov >= cap_value leave the eligibility mask
  CoverageState state;
  MiningResult result;
};

inline bool has_eligible_occurrence(const PatternRecord& rec, const CoverageState& state) {
  for (int gid : rec.occurrence_graphs) {
    if (state.eligible[static_cast<std::size_t>(gid)]) return true;
  }
  return false;
}

inline void mine_children(MineContext& ctx, const PatternRecord& pattern);

// Gate a freshly generated extension: support, then canonical minimality.
// On acceptance, bump coverage dataset-wide, shrink eligibility, recurse.
inline void process_candidate(MineContext& ctx, PatternRecord candidate) {
  if (candidate.support() < ctx.threshold) return;
  ++ctx.result.stats.canonical_tests;
  if (!is_canonical(candidate.code)) return;

  for (int gid : candidate.occurrence_graphs) {
    int& c = ctx.state.cov[static_cast<std::size_t>(gid)];
    ++c;
    if (ctx.capped && c >= ctx.cap_value) ctx.state.remove(gid);
  }
  ++ctx.result.stats.patterns_accepted;
  ctx.result.candidates.push_back(candidate);
  ctx.result.filler_flags.push_back(0);
  mine_children(ctx, candidate);
}

inline void mine_children(MineContext& ctx, const PatternRecord& pattern) {
  if (ctx.cfg.max_edges && pattern.code.edge_count() >= *ctx.cfg.max_edges) return;
  if (!ctx.state.any_eligible() || !has_eligible_occurrence(pattern, ctx.state)) return;
  ExtensionMap extensions =
      rightmost_extensions(pattern, ctx.state.eligible, ctx.ds, ctx.cfg.automorphism_cap);
  ctx.result.stats.extensions_generated += static_cast<long long>(extensions.size());
  for (auto& [tuple, child] : extensions) {
    process_candidate(ctx, std::move(child));
  }
}

inline MiningResult mine_impl(const GraphDataset& ds, const MinerConfig& cfg, bool capped) {
  cfg.check();
  if (ds.size() == 0) throw Error("mine: empty dataset");
  const auto started = std::chrono::steady_clock::now();

  MineContext ctx{ds, cfg, capped && cfg.gamma.has_value(), support_threshold(cfg.delta, ds.size()),
                  0, {}, {}};
  ctx.cap_value = ctx.capped ? exact_ceil_product(*cfg.gamma, cfg.min_cov) : 0;
  ctx.state.init(ds.size());
  ctx.result.config = cfg;
  ctx.result.dataset_name = ds.name;
  ctx.result.graph_count = ds.size();
  ctx.result.threshold = ctx.threshold;
  ctx.result.cap_enabled = ctx.capped;

  std::vector<PatternRecord> roots =
      enumerate_single_edges(ds, ctx.state.eligible, cfg.automorphism_cap);
  ctx.result.stats.extensions_generated += static_cast<long long>(roots.size());
  for (PatternRecord& root : roots) {
    process_candidate(ctx, std::move(root));
  }

  ctx.result.final_coverage = ctx.state.cov;
  ctx.result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return std::move(ctx.result);
}

}  // namespace miner_detail

// Algorithm: depth-first growth over canonical DFS codes. A child is accepted
// iff canonical and frequent; acceptance bumps coverage for every graph
// containing it, and graphs at gamma * min_cov coverage stop generating
// extensions for the rest of the run.
inline MiningResult mine(const GraphDataset& ds, const MinerConfig& cfg) {
  return miner_detail::mine_impl(ds, cfg, true);
}

// Cap-disabled run: every graph stays eligible throughout, i.e. plain
// frequent-subgraph mining at the same threshold.
inline MiningResult mine_baseline(const GraphDataset& ds, const MinerConfig& cfg) {
  return miner_detail::mine_impl(ds, cfg, false);
}

// Canonical codes of one graph in ascending (edge count, code) order.
// Level-wise: children of level k are generated lazily when level k runs out.
class GraphCodeEnumerator {
 public:
  GraphCodeEnumerator(const LabeledGraph& graph, std::optional<int> max_edges,
                      int automorphism_cap)
      : max_edges_(max_edges), automorphism_cap_(automorphism_cap) {
    LabeledGraph copy = graph;
    copy.graph_id = 0;
    ds_.name = "single";
    ds_.graphs.push_back(std::move(copy));
    ds_.labels.push_back(0);
    ds_.class_count = 1;
    level_ = enumerate_single_edges(ds_, {1}, automorphism_cap_);
  }

  std::optional<DfsCode> next() {
    while (index_ >= level_.size()) {
      if (level_.empty()) return std::nullopt;
      if (max_edges_ && level_.front().code.edge_count() >= *max_edges_) return std::nullopt;
      advance_level();
      index_ = 0;
      if (level_.empty()) return std::nullopt;
    }
    return level_[index_++].code;
  }

 private:
  void advance_level() {
    std::vector<PatternRecord> next_level;
    const std::vector<char> scope{1};
    for (const PatternRecord& rec : level_) {
      ExtensionMap children = rightmost_extensions(rec, scope, ds_, automorphism_cap_);
      for (auto& [tuple, child] : children) {
        if (is_canonical(child.code)) next_level.push_back(std::move(child));
      }
    }
    std::sort(next_level.begin(), next_level.end(),
              [](const PatternRecord& a, const PatternRecord& b) {
                return compare_codes(a.code, b.code) < 0;
              });
    level_ = std::move(next_level);
  }

  GraphDataset ds_;
  std::optional<int> max_edges_;
  int automorphism_cap_;
  std::vector<PatternRecord> level_;
  std::size_t index_ = 0;
};

// Fairness top-up: graphs still under min_cov get their smallest canonical
// codes appended as fillers (support threshold bypassed) until covered.
// Fillers carry one witness occurrence per containing graph. Graphs whose
// pattern supply runs out (edgeless ones in particular) are reported.
inline MiningResult complete_coverage(const GraphDataset& ds, MiningResult result,
                                      const MinerConfig& cfg) {
  std::set<std::string> known;
  for (const PatternRecord& rec : result.candidates) known.insert(rec.code.to_string());

  for (int gid = 0; gid < ds.size(); ++gid) {
    if (result.final_coverage[static_cast<std::size_t>(gid)] >= cfg.min_cov) continue;
    const LabeledGraph& g = ds.graphs[static_cast<std::size_t>(gid)];
    if (g.edge_count() == 0) {
      result.uncoverable_graphs.push_back(gid);
      continue;
    }
    GraphCodeEnumerator codes(g, cfg.max_edges, cfg.automorphism_cap);
    while (result.final_coverage[static_cast<std::size_t>(gid)] < cfg.min_cov) {
      const std::optional<DfsCode> code = codes.next();
      if (!code) {
        result.uncoverable_graphs.push_back(gid);
        break;
      }
      if (!known.insert(code->to_string()).second) continue;
      PatternRecord filler;
      filler.code = *code;
      for (int j = 0; j < ds.size(); ++j) {
        if (auto emb = find_embedding(ds.graphs[static_cast<std::size_t>(j)], *code)) {
          filler.occurrences.push_back({j, std::move(*emb)});
          filler.occurrence_graphs.push_back(j);
        }
      }
      for (int j : filler.occurrence_graphs) ++result.final_coverage[static_cast<std::size_t>(j)];
      result.candidates.push_back(std::move(filler));
      result.filler_flags.push_back(1);
    }
  }
  return result;
}

// --- serialization ---------------------------------------------------------

inline nlohmann::json miner_config_to_json(const MinerConfig& cfg) {
  nlohmann::json j;
  j["delta"] = cfg.delta;
  j["min_cov"] = cfg.min_cov;
  j["gamma"] = cfg.gamma ? nlohmann::json(*cfg.gamma) : nlohmann::json(nullptr);
  j["max_edges"] = cfg.max_edges ? nlohmann::json(*cfg.max_edges) : nlohmann::json(nullptr);
  j["automorphism_cap"] = cfg.automorphism_cap;
  return j;
}

inline MinerConfig miner_config_from_json(const nlohmann::json& j) {
  MinerConfig cfg;
  cfg.delta = j.at("delta").get<double>();
  cfg.min_cov = j.at("min_cov").get<int>();
  if (!j.at("gamma").is_null()) cfg.gamma = j.at("gamma").get<double>();
  else cfg.gamma.reset();
  if (!j.at("max_edges").is_null()) cfg.max_edges = j.at("max_edges").get<int>();
  if (j.contains("automorphism_cap")) cfg.automorphism_cap = j.at("automorphism_cap").get<int>();
  return cfg;
}

inline nlohmann::json mining_result_to_json(const MiningResult& r) {
  nlohmann::json j;
  j["config"] = miner_config_to_json(r.config);
  j["dataset"] = r.dataset_name;
  j["graph_count"] = r.graph_count;
  j["support_threshold"] = r.threshold;
  j["cap_enabled"] = r.cap_enabled;
  nlohmann::json cands = nlohmann::json::array();
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    const PatternRecord& rec = r.candidates[i];
    nlohmann::json c;
    c["code"] = rec.code.to_string();
    c["support"] = rec.support();
    c["graphs"] = rec.occurrence_graphs;
    c["filler"] = r.filler_flags[i] != 0;
    cands.push_back(std::move(c));
  }
  j["candidates"] = std::move(cands);
  j["coverage"] = r.final_coverage;
  j["uncoverable_graphs"] = r.uncoverable_graphs;
  j["stats"] = {{"extensions_generated", r.stats.extensions_generated},
                {"canonical_tests", r.stats.canonical_tests},
                {"patterns_accepted", r.stats.patterns_accepted},
                {"wall_seconds", r.stats.wall_seconds}};
  return j;
}

// Rebuilds the hand-off view of a mining run: codes, cover sets and filler
// flags. Embedding lists are not serialized; downstream consumers only need
// incidence.
inline MiningResult mining_result_from_json(const nlohmann::json& j) {
  MiningResult r;
  r.config = miner_config_from_json(j.at("config"));
  r.dataset_name = j.at("dataset").get<std::string>();
  r.graph_count = j.at("graph_count").get<int>();
  r.threshold = j.at("support_threshold").get<int>();
  r.cap_enabled = j.at("cap_enabled").get<bool>();
  for (const auto& c : j.at("candidates")) {
    PatternRecord rec;
    rec.code = DfsCode::parse(c.at("code").get<std::string>());
    rec.occurrence_graphs = c.at("graphs").get<std::vector<int>>();
    r.candidates.push_back(std::move(rec));
    r.filler_flags.push_back(c.at("filler").get<bool>() ? 1 : 0);
  }
  r.final_coverage = j.at("coverage").get<std::vector<int>>();
  r.uncoverable_graphs = j.at("uncoverable_graphs").get<std::vector<int>>();
  const auto& s = j.at("stats");
  r.stats.extensions_generated = s.at("extensions_generated").get<long long>();
  r.stats.canonical_tests = s.at("canonical_tests").get<long long>();
  r.stats.patterns_accepted = s.at("patterns_accepted").get<long long>();
  r.stats.wall_seconds = s.at("wall_seconds").get<double>();
  return r;
}

}  // namespace dsspan
