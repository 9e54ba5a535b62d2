#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "dsspan/dfs_code.hpp"
#include "dsspan/graph.hpp"

// Deliberately slow, obviously correct reference implementations for tests.
// Everything here enumerates exhaustively and hard-fails beyond the size
// bound rather than approximating.

namespace dsspan::oracle {

inline constexpr int kMaxVertices = 8;

inline void check_size(const LabeledGraph& g) {
  if (g.vertex_count() > kMaxVertices) {
    throw Error("oracle: graph exceeds size bound of " + std::to_string(kMaxVertices) +
                " vertices");
  }
}

// Isomorphism key of a small labeled graph: the lexicographically minimal
// encoding over all vertex orderings.
struct CanonicalForm {
  std::vector<int> key;
  auto operator<=>(const CanonicalForm&) const = default;
};

inline CanonicalForm canonical_form(const LabeledGraph& g) {
  check_size(g);
  const int n = g.vertex_count();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);  // perm[old] = new position
  std::optional<std::vector<int>> best;
  do {
    std::vector<int> enc;
    enc.push_back(n);
    enc.push_back(g.edge_count());
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] =
          g.vertex_labels[static_cast<std::size_t>(v)];
    }
    for (int l : labels) enc.push_back(l);
    std::vector<std::array<int, 3>> edges;
    for (const LabeledEdge& e : g.edges) {
      int a = perm[static_cast<std::size_t>(e.u)];
      int b = perm[static_cast<std::size_t>(e.v)];
      if (a > b) std::swap(a, b);
      edges.push_back({a, b, e.label});
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) {
      enc.push_back(e[0]);
      enc.push_back(e[1]);
      enc.push_back(e[2]);
    }
    if (!best || enc < *best) best = std::move(enc);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {best ? *best : std::vector<int>{0, 0}};
}

namespace detail {

// Connected edge subsets of g with 1..max_edges edges, as edge index masks.
inline std::vector<std::uint32_t> connected_edge_subsets(const LabeledGraph& g, int max_edges) {
  const int ne = g.edge_count();
  std::set<std::uint32_t> seen;
  std::vector<std::uint32_t> frontier;
  for (int i = 0; i < ne; ++i) {
    const std::uint32_t mask = 1u << i;
    seen.insert(mask);
    frontier.push_back(mask);
  }
  std::vector<std::uint32_t> all(frontier);
  for (int size = 1; size < max_edges; ++size) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t mask : frontier) {
      // vertices touched by the subset
      std::uint32_t verts = 0;
      for (int i = 0; i < ne; ++i) {
        if (mask & (1u << i)) {
          verts |= 1u << g.edges[static_cast<std::size_t>(i)].u;
          verts |= 1u << g.edges[static_cast<std::size_t>(i)].v;
        }
      }
      for (int i = 0; i < ne; ++i) {
        if (mask & (1u << i)) continue;
        const LabeledEdge& e = g.edges[static_cast<std::size_t>(i)];
        if (!((verts >> e.u) & 1u) && !((verts >> e.v) & 1u)) continue;  // stays connected
        const std::uint32_t grown = mask | (1u << i);
        if (seen.insert(grown).second) {
          next.push_back(grown);
          all.push_back(grown);
        }
      }
    }
    frontier = std::move(next);
  }
  return all;
}

inline LabeledGraph subgraph_of(const LabeledGraph& g, std::uint32_t edge_mask) {
  std::vector<int> vertex_of;  // new id -> old id
  std::vector<int> old_to_new(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<LabeledEdge> edges;
  for (int i = 0; i < g.edge_count(); ++i) {
    if (!(edge_mask & (1u << i))) continue;
    const LabeledEdge& e = g.edges[static_cast<std::size_t>(i)];
    for (int endpoint : {e.u, e.v}) {
      if (old_to_new[static_cast<std::size_t>(endpoint)] == -1) {
        old_to_new[static_cast<std::size_t>(endpoint)] = static_cast<int>(vertex_of.size());
        vertex_of.push_back(endpoint);
      }
    }
    edges.push_back({old_to_new[static_cast<std::size_t>(e.u)],
                     old_to_new[static_cast<std::size_t>(e.v)], e.label});
  }
  std::vector<int> labels;
  for (int old_id : vertex_of) {
    labels.push_back(g.vertex_labels[static_cast<std::size_t>(old_id)]);
  }
  return make_graph(0, std::move(labels), std::move(edges));
}

}  // namespace detail

// Every isomorphism class of connected subgraphs (1..max_edges edges)
// occurring in at least min_support distinct graphs.
inline std::set<CanonicalForm> brute_frequent(const GraphDataset& ds, int min_support,
                                              int max_edges) {
  std::map<CanonicalForm, int> counts;
  for (const LabeledGraph& g : ds.graphs) {
    check_size(g);
    std::set<CanonicalForm> in_graph;
    for (std::uint32_t mask : detail::connected_edge_subsets(g, max_edges)) {
      in_graph.insert(canonical_form(detail::subgraph_of(g, mask)));
    }
    for (const CanonicalForm& f : in_graph) ++counts[f];
  }
  std::set<CanonicalForm> frequent;
  for (const auto& [form, count] : counts) {
    if (count >= min_support) frequent.insert(form);
  }
  return frequent;
}

namespace detail {

inline bool mapping_search(const LabeledGraph& g, const LabeledGraph& p, std::size_t next,
                           std::vector<int>& assign, std::vector<char>& taken) {
  if (next == assign.size()) return true;
  for (int cand = 0; cand < g.vertex_count(); ++cand) {
    if (taken[static_cast<std::size_t>(cand)]) continue;
    if (g.vertex_labels[static_cast<std::size_t>(cand)] !=
        p.vertex_labels[next]) {
      continue;
    }
    bool ok = true;
    for (const LabeledEdge& e : p.edges) {
      const int a = e.u;
      const int b = e.v;
      if (static_cast<std::size_t>(a) >= next + 1 || static_cast<std::size_t>(b) >= next + 1)
        continue;  // involves an unassigned pattern vertex
      const int ga = a == static_cast<int>(next) ? cand : assign[static_cast<std::size_t>(a)];
      const int gb = b == static_cast<int>(next) ? cand : assign[static_cast<std::size_t>(b)];
      if (a != static_cast<int>(next) && b != static_cast<int>(next)) continue;
      if (g.edge_label_between(ga, gb) != e.label) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    assign[next] = cand;
    taken[static_cast<std::size_t>(cand)] = 1;
    if (mapping_search(g, p, next + 1, assign, taken)) return true;
    taken[static_cast<std::size_t>(cand)] = 0;
    assign[next] = -1;
  }
  return false;
}

}  // namespace detail

// Exhaustive injective label-preserving mapping search (non-induced).
inline bool brute_contains(const LabeledGraph& graph, const LabeledGraph& pattern) {
  check_size(graph);
  check_size(pattern);
  if (pattern.vertex_count() > graph.vertex_count()) return false;
  std::vector<int> assign(static_cast<std::size_t>(pattern.vertex_count()), -1);
  std::vector<char> taken(static_cast<std::size_t>(graph.vertex_count()), 0);
  return detail::mapping_search(graph, pattern, 0, assign, taken);
}

namespace detail {

struct TraversalState {
  const LabeledGraph& g;
  std::vector<int> dfs_of;     // graph vertex -> dfs index or -1
  std::vector<int> vertex_of;  // dfs index -> graph vertex
  std::vector<int> rmpath;     // dfs indices, root..rightmost
  std::vector<char> edge_used;
  DfsCode code;
  std::optional<DfsCode> best;
  bool tight = true;  // prefix equals best prefix so far
};

inline int edge_index_between(const LabeledGraph& g, int u, int v) {
  for (int i = 0; i < g.edge_count(); ++i) {
    const LabeledEdge& e = g.edges[static_cast<std::size_t>(i)];
    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return i;
  }
  return -1;
}

inline void traverse_all(TraversalState& st);

inline void try_extension(TraversalState& st, const DfsEdge& tuple, int edge_index,
                          int new_graph_vertex) {
  const std::size_t pos = st.code.edges.size();
  bool was_tight = st.tight;
  if (st.best && st.tight) {
    const DfsEdge& ref = st.best->edges[pos];
    if (edge_less(ref, tuple)) return;  // worse than the incumbent prefix
    st.tight = tuple == ref;
  }
  st.code.edges.push_back(tuple);
  st.edge_used[static_cast<std::size_t>(edge_index)] = 1;
  std::vector<int> saved_rmpath = st.rmpath;
  if (tuple.forward()) {
    st.dfs_of[static_cast<std::size_t>(new_graph_vertex)] = tuple.v;
    st.vertex_of.push_back(new_graph_vertex);
    while (st.rmpath.back() != tuple.u) st.rmpath.pop_back();
    st.rmpath.push_back(tuple.v);
  }
  traverse_all(st);
  if (tuple.forward()) {
    st.dfs_of[static_cast<std::size_t>(new_graph_vertex)] = -1;
    st.vertex_of.pop_back();
  }
  st.rmpath = std::move(saved_rmpath);
  st.edge_used[static_cast<std::size_t>(edge_index)] = 0;
  st.code.edges.pop_back();
  st.tight = was_tight;
}

inline void traverse_all(TraversalState& st) {
  if (st.code.edge_count() == st.g.edge_count()) {
    if (!st.best || compare_codes(st.code, *st.best) < 0) {
      st.best = st.code;
    }
    st.tight = true;  // the incumbent is now this very code
    return;
  }
  const int rightmost = st.rmpath.back();
  const int g_rightmost = st.vertex_of[static_cast<std::size_t>(rightmost)];
  // backward edges from the rightmost vertex to rightmost-path ancestors
  for (std::size_t ai = 0; ai + 1 < st.rmpath.size(); ++ai) {
    const int a = st.rmpath[ai];
    const int ga = st.vertex_of[static_cast<std::size_t>(a)];
    const int ei = edge_index_between(st.g, g_rightmost, ga);
    if (ei < 0 || st.edge_used[static_cast<std::size_t>(ei)]) continue;
    DfsEdge t{rightmost, a,
              st.g.vertex_labels[static_cast<std::size_t>(g_rightmost)],
              st.g.edges[static_cast<std::size_t>(ei)].label,
              st.g.vertex_labels[static_cast<std::size_t>(ga)]};
    try_extension(st, t, ei, -1);
  }
  // forward edges from any rightmost-path vertex to an unvisited vertex
  const int next_idx = static_cast<int>(st.vertex_of.size());
  for (int w : st.rmpath) {
    const int gw = st.vertex_of[static_cast<std::size_t>(w)];
    for (const Neighbor& n : st.g.neighbors(gw)) {
      if (st.dfs_of[static_cast<std::size_t>(n.to)] != -1) continue;
      const int ei = edge_index_between(st.g, gw, n.to);
      if (ei < 0 || st.edge_used[static_cast<std::size_t>(ei)]) continue;
      DfsEdge t{w, next_idx, st.g.vertex_labels[static_cast<std::size_t>(gw)], n.edge_label,
                st.g.vertex_labels[static_cast<std::size_t>(n.to)]};
      try_extension(st, t, ei, n.to);
    }
  }
}

}  // namespace detail

// Minimum DFS code over all DFS traversals of a connected pattern graph.
inline DfsCode brute_min_code(const LabeledGraph& pattern) {
  check_size(pattern);
  if (pattern.edge_count() == 0) throw Error("brute_min_code: graph has no edges");
  detail::TraversalState st{pattern,
                            std::vector<int>(static_cast<std::size_t>(pattern.vertex_count()), -1),
                            {},
                            {},
                            std::vector<char>(static_cast<std::size_t>(pattern.edge_count()), 0),
                            {},
                            std::nullopt,
                            true};
  for (int u = 0; u < pattern.vertex_count(); ++u) {
    for (const Neighbor& n : pattern.neighbors(u)) {
      const int ei = detail::edge_index_between(pattern, u, n.to);
      st.dfs_of[static_cast<std::size_t>(u)] = 0;
      st.vertex_of = {u};
      st.rmpath = {0};
      DfsEdge t{0, 1, pattern.vertex_labels[static_cast<std::size_t>(u)], n.edge_label,
                pattern.vertex_labels[static_cast<std::size_t>(n.to)]};
      detail::try_extension(st, t, ei, n.to);
      st.dfs_of[static_cast<std::size_t>(u)] = -1;
      st.vertex_of.clear();
      st.rmpath.clear();
    }
  }
  if (!st.best) throw Error("brute_min_code: graph is not connected");
  return *st.best;
}

// Information gain from the cover split, by direct set arithmetic. Kept
// independent of the production scoring path.
inline double brute_ig(std::span<const int> cover, std::span<const int> labels) {
  const std::size_t n = labels.size();
  std::vector<char> in_cover(n, 0);
  for (int gid : cover) in_cover[static_cast<std::size_t>(gid)] = 1;

  const auto entropy_of = [](const std::vector<int>& members, std::span<const int> ls) {
    if (members.empty()) return 0.0;
    std::map<int, int> counts;
    for (int i : members) ++counts[ls[static_cast<std::size_t>(i)]];
    double h = 0.0;
    for (const auto& [label, count] : counts) {
      const double p = static_cast<double>(count) / static_cast<double>(members.size());
      h -= p * std::log2(p);
    }
    return h;
  };

  std::vector<int> covered, uncovered, everyone;
  for (std::size_t i = 0; i < n; ++i) {
    everyone.push_back(static_cast<int>(i));
    (in_cover[i] ? covered : uncovered).push_back(static_cast<int>(i));
  }
  const double h = entropy_of(everyone, labels);
  const double weighted =
      (static_cast<double>(covered.size()) / static_cast<double>(n)) * entropy_of(covered, labels) +
      (static_cast<double>(uncovered.size()) / static_cast<double>(n)) *
          entropy_of(uncovered, labels);
  return h - weighted;
}

}  // namespace dsspan::oracle
