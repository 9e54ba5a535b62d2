#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dsspan/dfs_code.hpp"
#include "dsspan/graph.hpp"

namespace dsspan {

namespace iso_detail {

inline bool extend(const LabeledGraph& g, const DfsCode& code, std::size_t pos,
                   std::vector<int>& map, std::vector<char>& used) {
  if (pos == code.edges.size()) return true;
  const DfsEdge& e = code.edges[pos];
  if (e.forward()) {
    const int gu = map[static_cast<std::size_t>(e.u)];
    for (const Neighbor& n : g.neighbors(gu)) {
      if (used[static_cast<std::size_t>(n.to)] || n.edge_label != e.e_label ||
          g.vertex_labels[static_cast<std::size_t>(n.to)] != e.v_label) {
        continue;
      }
      map[static_cast<std::size_t>(e.v)] = n.to;
      used[static_cast<std::size_t>(n.to)] = 1;
      if (extend(g, code, pos + 1, map, used)) return true;
      used[static_cast<std::size_t>(n.to)] = 0;
      map[static_cast<std::size_t>(e.v)] = -1;
    }
    return false;
  }
  const int le = g.edge_label_between(map[static_cast<std::size_t>(e.u)],
                                      map[static_cast<std::size_t>(e.v)]);
  return le == e.e_label && extend(g, code, pos + 1, map, used);
}

}  // namespace iso_detail

// First injective label-preserving embedding of the code in g, or nullopt.
// Backtracking over the code's own edge order.
inline std::optional<std::vector<int>> find_embedding(const LabeledGraph& g, const DfsCode& code) {
  if (code.edges.empty()) return std::nullopt;
  const DfsEdge& first = code.edges.front();
  std::vector<int> map(static_cast<std::size_t>(code.vertex_count()), -1);
  std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int gu = 0; gu < g.vertex_count(); ++gu) {
    if (g.vertex_labels[static_cast<std::size_t>(gu)] != first.u_label) continue;
    for (const Neighbor& n : g.neighbors(gu)) {
      if (n.edge_label != first.e_label ||
          g.vertex_labels[static_cast<std::size_t>(n.to)] != first.v_label) {
        continue;
      }
      map[0] = gu;
      map[1] = n.to;
      used[static_cast<std::size_t>(gu)] = 1;
      used[static_cast<std::size_t>(n.to)] = 1;
      if (iso_detail::extend(g, code, 1, map, used)) return map;
      used[static_cast<std::size_t>(gu)] = 0;
      used[static_cast<std::size_t>(n.to)] = 0;
      map[0] = map[1] = -1;
    }
  }
  return std::nullopt;
}

inline bool contains(const LabeledGraph& g, const DfsCode& code) {
  return find_embedding(g, code).has_value();
}

}  // namespace dsspan
