#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "dsspan/dfs_code.hpp"
#include "dsspan/graph.hpp"

namespace dsspan {

// One embedding of a pattern: DFS index -> concrete vertex id. The map is
// injective and every code edge lands on a label-matching edge of the graph.
struct Occurrence {
  int graph_id = 0;
  std::vector<int> vertex_map;
};

// A mined pattern with its embeddings, grouped by ascending graph id.
// Graphs whose embedding list blew past the automorphism cap keep their
// membership in occurrence_graphs (support stays exact) but carry no stored
// occurrences and so generate no further extensions.
struct PatternRecord {
  DfsCode code;
  std::vector<Occurrence> occurrences;
  std::vector<int> occurrence_graphs;  // sorted, unique
  std::vector<int> capped_graphs;      // subset of occurrence_graphs

  int support() const { return static_cast<int>(occurrence_graphs.size()); }
};

using ExtensionMap = std::map<DfsEdge, PatternRecord, EdgeLess>;

namespace pattern_detail {

struct RawBucket {
  std::vector<Occurrence> occs;  // appended in ascending graph_id runs
  bool scope_hit = false;
};

// Groups a bucket's occurrences into per-graph runs, applying the cap.
inline PatternRecord seal_bucket(DfsCode code, RawBucket&& bucket, int automorphism_cap) {
  PatternRecord rec;
  rec.code = std::move(code);
  auto& occs = bucket.occs;
  std::size_t i = 0;
  while (i < occs.size()) {
    std::size_t j = i;
    while (j < occs.size() && occs[j].graph_id == occs[i].graph_id) ++j;
    const int gid = occs[i].graph_id;
    rec.occurrence_graphs.push_back(gid);
    if (static_cast<int>(j - i) <= automorphism_cap) {
      for (std::size_t k = i; k < j; ++k) rec.occurrences.push_back(std::move(occs[k]));
    } else {
      rec.capped_graphs.push_back(gid);
    }
    i = j;
  }
  return rec;
}

}  // namespace pattern_detail

// One PatternRecord per distinct canonical single-edge code occurring in the
// scope. Occurrences are collected over the whole dataset; the scope mask
// only controls which codes make it into the result. Symmetric edges
// (equal endpoint labels) contribute both orientations as occurrences.
inline std::vector<PatternRecord> enumerate_single_edges(const GraphDataset& ds,
                                                         const std::vector<char>& scope,
                                                         int automorphism_cap = 4096) {
  std::map<DfsEdge, pattern_detail::RawBucket, EdgeLess> buckets;
  for (int gid = 0; gid < ds.size(); ++gid) {
    const LabeledGraph& g = ds.graphs[static_cast<std::size_t>(gid)];
    const bool in_scope = scope[static_cast<std::size_t>(gid)] != 0;
    for (const LabeledEdge& e : g.edges) {
      const int lu = g.vertex_labels[static_cast<std::size_t>(e.u)];
      const int lv = g.vertex_labels[static_cast<std::size_t>(e.v)];
      auto append = [&](int a, int b, int la, int lb) {
        auto& bucket = buckets[DfsEdge{0, 1, la, e.label, lb}];
        bucket.occs.push_back({gid, {a, b}});
        bucket.scope_hit |= in_scope;
      };
      if (lu <= lv) append(e.u, e.v, lu, lv);
      if (lv < lu || lu == lv) append(e.v, e.u, lv, lu);
    }
  }
  std::vector<PatternRecord> out;
  for (auto& [tuple, bucket] : buckets) {
    if (!bucket.scope_hit) continue;
    out.push_back(pattern_detail::seal_bucket(DfsCode{{tuple}}, std::move(bucket),
                                              automorphism_cap));
  }
  return out;
}

// Every one-edge rightmost-path extension of the pattern realized by at
// least one occurrence in an eligible graph: backward edges from the
// rightmost vertex to rightmost-path ancestors, forward edges from any
// rightmost-path vertex. Child records carry occurrences from all graphs,
// eligible or not; eligibility only gates which extension tuples exist.
inline ExtensionMap rightmost_extensions(const PatternRecord& pattern,
                                         const std::vector<char>& eligible,
                                         const GraphDataset& ds, int automorphism_cap = 4096) {
  ExtensionMap result;
  if (pattern.code.edges.empty() || pattern.occurrences.empty()) return result;

  const std::vector<int> rmpath = rightmost_path(pattern.code);
  const int rightmost = rmpath.back();
  const int next_idx = pattern.code.vertex_count();

  // Pattern-level adjacency: an occurrence's graph edge is already used iff
  // the code contains the corresponding pair.
  std::vector<char> closed(rmpath.size(), 0);
  for (std::size_t ai = 0; ai + 1 < rmpath.size(); ++ai) {
    closed[ai] = code_has_edge(pattern.code, rightmost, rmpath[ai]) ? 1 : 0;
  }

  std::map<DfsEdge, pattern_detail::RawBucket, EdgeLess> buckets;
  std::vector<char> used;
  for (const Occurrence& occ : pattern.occurrences) {
    const LabeledGraph& g = ds.graphs[static_cast<std::size_t>(occ.graph_id)];
    const bool is_eligible = eligible[static_cast<std::size_t>(occ.graph_id)] != 0;
    used.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int m : occ.vertex_map) used[static_cast<std::size_t>(m)] = 1;

    const int g_rightmost = occ.vertex_map[static_cast<std::size_t>(rightmost)];
    for (std::size_t ai = 0; ai + 1 < rmpath.size(); ++ai) {
      if (closed[ai]) continue;
      const int a = rmpath[ai];
      const int ga = occ.vertex_map[static_cast<std::size_t>(a)];
      const int le = g.edge_label_between(g_rightmost, ga);
      if (le < 0) continue;
      DfsEdge t{rightmost, a, g.vertex_labels[static_cast<std::size_t>(g_rightmost)], le,
                g.vertex_labels[static_cast<std::size_t>(ga)]};
      auto& bucket = buckets[t];
      bucket.occs.push_back({occ.graph_id, occ.vertex_map});
      bucket.scope_hit |= is_eligible;
    }
    for (int w : rmpath) {
      const int gw = occ.vertex_map[static_cast<std::size_t>(w)];
      for (const Neighbor& n : g.neighbors(gw)) {
        if (used[static_cast<std::size_t>(n.to)]) continue;
        DfsEdge t{w, next_idx, g.vertex_labels[static_cast<std::size_t>(gw)], n.edge_label,
                  g.vertex_labels[static_cast<std::size_t>(n.to)]};
        auto& bucket = buckets[t];
        std::vector<int> child_map(occ.vertex_map);
        child_map.push_back(n.to);
        bucket.occs.push_back({occ.graph_id, std::move(child_map)});
        bucket.scope_hit |= is_eligible;
      }
    }
  }

  for (auto& [tuple, bucket] : buckets) {
    if (!bucket.scope_hit) continue;
    DfsCode child = pattern.code;
    child.edges.push_back(tuple);
    result.emplace(tuple, pattern_detail::seal_bucket(std::move(child), std::move(bucket),
                                                      automorphism_cap));
  }
  return result;
}

}  // namespace dsspan
