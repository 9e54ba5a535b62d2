#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dsspan/graph.hpp"

namespace dsspan {

// One extension tuple of a DFS code. A forward edge (u < v) discovers vertex
// v; a backward edge (u > v) closes a cycle from the rightmost vertex back to
// a vertex on the rightmost path.
struct DfsEdge {
  int u = 0;
  int v = 0;
  int u_label = 0;
  int e_label = 0;
  int v_label = 0;

  bool forward() const { return u < v; }
  bool operator==(const DfsEdge&) const = default;
};

// gSpan edge-tuple order. Backward extensions sort before forward ones from
// the same prefix; among forward edges a deeper source wins, then labels
// ascending (u_label, e_label, v_label).
inline bool edge_less(const DfsEdge& a, const DfsEdge& b) {
  const bool af = a.forward();
  const bool bf = b.forward();
  if (!af && bf) return a.u < b.v;
  if (af && !bf) return a.v <= b.u;
  if (!af) {  // both backward
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    if (a.u_label != b.u_label) return a.u_label < b.u_label;
    if (a.e_label != b.e_label) return a.e_label < b.e_label;
    return a.v_label < b.v_label;
  }
  // both forward
  if (a.v != b.v) return a.v < b.v;
  if (a.u != b.u) return a.u > b.u;
  if (a.u_label != b.u_label) return a.u_label < b.u_label;
  if (a.e_label != b.e_label) return a.e_label < b.e_label;
  return a.v_label < b.v_label;
}

struct EdgeLess {
  bool operator()(const DfsEdge& a, const DfsEdge& b) const { return edge_less(a, b); }
};

struct DfsCode {
  std::vector<DfsEdge> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }

  int vertex_count() const {
    int mx = -1;
    for (const DfsEdge& e : edges) mx = std::max(mx, std::max(e.u, e.v));
    return mx + 1;
  }

  // Text form "(u,v,lu,le,lv)" joined by ';', stable and parseable.
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const DfsEdge& e = edges[i];
      if (i) s += ';';
      s += '(';
      s += std::to_string(e.u) + ',' + std::to_string(e.v) + ',' + std::to_string(e.u_label) +
           ',' + std::to_string(e.e_label) + ',' + std::to_string(e.v_label);
      s += ')';
    }
    return s;
  }

  static DfsCode parse(const std::string& text);
};

inline bool operator==(const DfsCode& a, const DfsCode& b) { return a.edges == b.edges; }

// Total order: positional tuple comparison, shorter prefix-equal code first.
// Returns -1, 0 or 1.
inline int compare_codes(const DfsCode& a, const DfsCode& b) {
  const std::size_t n = std::min(a.edges.size(), b.edges.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (edge_less(a.edges[i], b.edges[i])) return -1;
    if (edge_less(b.edges[i], a.edges[i])) return 1;
  }
  if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size() ? -1 : 1;
  return 0;
}

struct CodeLess {
  bool operator()(const DfsCode& a, const DfsCode& b) const { return compare_codes(a, b) < 0; }
};

// Vertex indices on the rightmost path, root first, rightmost vertex last.
inline std::vector<int> rightmost_path(const DfsCode& code) {
  std::vector<int> path;
  int want = -1;
  for (int i = code.edge_count() - 1; i >= 0; --i) {
    const DfsEdge& e = code.edges[static_cast<std::size_t>(i)];
    if (!e.forward()) continue;
    if (want == -1) {
      path.push_back(e.v);
      path.push_back(e.u);
      want = e.u;
    } else if (e.v == want) {
      path.push_back(e.u);
      want = e.u;
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

inline bool code_has_edge(const DfsCode& code, int i, int j) {
  for (const DfsEdge& e : code.edges) {
    if ((e.u == i && e.v == j) || (e.u == j && e.v == i)) return true;
  }
  return false;
}

// Structural validity: rooted at (0,1), forward edges discover max+1 from a
// rightmost-path vertex, backward edges run from the rightmost vertex to a
// rightmost-path ancestor, labels consistent, no duplicate edges.
inline bool is_valid_code(const DfsCode& code) {
  if (code.edges.empty()) return false;
  const DfsEdge& first = code.edges.front();
  if (first.u != 0 || first.v != 1) return false;

  std::vector<int> labels{first.u_label, first.v_label};
  std::vector<int> rmpath{0, 1};
  std::vector<std::pair<int, int>> seen{{0, 1}};

  for (std::size_t i = 1; i < code.edges.size(); ++i) {
    const DfsEdge& e = code.edges[i];
    if (e.u == e.v || e.u < 0 || e.v < 0) return false;
    const auto on_rmpath = [&rmpath](int x) {
      return std::find(rmpath.begin(), rmpath.end(), x) != rmpath.end();
    };
    if (e.forward()) {
      if (e.v != static_cast<int>(labels.size())) return false;
      if (!on_rmpath(e.u)) return false;
      if (labels[static_cast<std::size_t>(e.u)] != e.u_label) return false;
      labels.push_back(e.v_label);
      while (rmpath.back() != e.u) rmpath.pop_back();
      rmpath.push_back(e.v);
    } else {
      if (e.u != rmpath.back()) return false;
      if (!on_rmpath(e.v)) return false;
      if (e.u >= static_cast<int>(labels.size()) || e.v >= static_cast<int>(labels.size()))
        return false;
      if (labels[static_cast<std::size_t>(e.u)] != e.u_label) return false;
      if (labels[static_cast<std::size_t>(e.v)] != e.v_label) return false;
    }
    std::pair<int, int> key{std::min(e.u, e.v), std::max(e.u, e.v)};
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) return false;
    seen.push_back(key);
  }
  return true;
}

inline DfsCode DfsCode::parse(const std::string& text) {
  DfsCode code;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ';') {
      ++pos;
      continue;
    }
    if (text[pos] != '(') throw Error("malformed code text: " + text);
    const std::size_t close = text.find(')', pos);
    if (close == std::string::npos) throw Error("malformed code text: " + text);
    std::string body = text.substr(pos + 1, close - pos - 1);
    int fields[5];
    std::size_t start = 0;
    for (int f = 0; f < 5; ++f) {
      const std::size_t comma = body.find(',', start);
      const bool last = f == 4;
      if (last != (comma == std::string::npos)) throw Error("malformed code tuple: " + body);
      const std::string tok = body.substr(start, last ? std::string::npos : comma - start);
      try {
        std::size_t used = 0;
        fields[f] = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error("malformed code tuple: " + body);
      }
      start = comma + 1;
    }
    code.edges.push_back({fields[0], fields[1], fields[2], fields[3], fields[4]});
    pos = close + 1;
  }
  if (!is_valid_code(code)) throw Error("invalid DFS code: " + text);
  return code;
}

// The pattern graph a code describes.
inline LabeledGraph code_to_graph(const DfsCode& code) {
  const int n = code.vertex_count();
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  std::vector<LabeledEdge> edges;
  auto set_label = [&labels](int idx, int value) {
    int& slot = labels[static_cast<std::size_t>(idx)];
    if (slot == -1) slot = value;
    else if (slot != value) throw Error("inconsistent vertex labels in DFS code");
  };
  for (const DfsEdge& e : code.edges) {
    set_label(e.u, e.u_label);
    set_label(e.v, e.v_label);
    edges.push_back({e.u, e.v, e.e_label});
  }
  return make_graph(0, std::move(labels), std::move(edges));
}

namespace mincode_detail {

// Minimal next tuple of the growing minimal code of g, plus the occurrence
// maps realizing it. `occs` holds all embeddings of `prefix` in g.
inline std::optional<DfsEdge> next_minimal(const LabeledGraph& g, const DfsCode& prefix,
                                           std::vector<std::vector<int>>& occs) {
  const std::vector<int> rmpath = rightmost_path(prefix);
  const int rightmost = rmpath.back();
  const int next_idx = prefix.vertex_count();

  std::optional<DfsEdge> best;
  std::vector<std::vector<int>> best_occs;
  std::vector<char> used(static_cast<std::size_t>(g.vertex_count()), 0);

  auto consider = [&](const DfsEdge& t, std::vector<int>&& occ) {
    if (!best || edge_less(t, *best)) {
      best = t;
      best_occs.clear();
      best_occs.push_back(std::move(occ));
    } else if (t == *best) {
      best_occs.push_back(std::move(occ));
    }
  };

  for (const std::vector<int>& map : occs) {
    for (int m : map) used[static_cast<std::size_t>(m)] = 1;
    // backward from the rightmost vertex to rightmost-path ancestors
    for (std::size_t ai = 0; ai + 1 < rmpath.size(); ++ai) {
      const int a = rmpath[ai];
      if (code_has_edge(prefix, rightmost, a)) continue;
      const int le = g.edge_label_between(map[static_cast<std::size_t>(rightmost)],
                                          map[static_cast<std::size_t>(a)]);
      if (le < 0) continue;
      DfsEdge t{rightmost, a,
                g.vertex_labels[static_cast<std::size_t>(map[static_cast<std::size_t>(rightmost)])],
                le, g.vertex_labels[static_cast<std::size_t>(map[static_cast<std::size_t>(a)])]};
      consider(t, std::vector<int>(map));
    }
    // forward from every rightmost-path vertex
    for (int w : rmpath) {
      const int gw = map[static_cast<std::size_t>(w)];
      for (const Neighbor& n : g.neighbors(gw)) {
        if (used[static_cast<std::size_t>(n.to)]) continue;
        DfsEdge t{w, next_idx, g.vertex_labels[static_cast<std::size_t>(gw)], n.edge_label,
                  g.vertex_labels[static_cast<std::size_t>(n.to)]};
        std::vector<int> child(map);
        child.push_back(n.to);
        consider(t, std::move(child));
      }
    }
    for (int m : map) used[static_cast<std::size_t>(m)] = 0;
  }

  occs = std::move(best_occs);
  return best;
}

inline std::optional<DfsEdge> minimal_first_tuple(const LabeledGraph& g,
                                                  std::vector<std::vector<int>>& occs) {
  std::optional<DfsEdge> best;
  std::vector<std::vector<int>> best_occs;
  for (int u = 0; u < g.vertex_count(); ++u) {
    for (const Neighbor& n : g.neighbors(u)) {
      DfsEdge t{0, 1, g.vertex_labels[static_cast<std::size_t>(u)], n.edge_label,
                g.vertex_labels[static_cast<std::size_t>(n.to)]};
      if (!best || edge_less(t, *best)) {
        best = t;
        best_occs.clear();
        best_occs.push_back({u, n.to});
      } else if (t == *best) {
        best_occs.push_back({u, n.to});
      }
    }
  }
  occs = std::move(best_occs);
  return best;
}

}  // namespace mincode_detail

// Minimal DFS code of a connected labeled graph with at least one edge.
inline DfsCode min_dfs_code(const LabeledGraph& g) {
  if (g.edge_count() == 0) throw Error("min_dfs_code: graph has no edges");
  std::vector<std::vector<int>> occs;
  const auto first = mincode_detail::minimal_first_tuple(g, occs);
  DfsCode code;
  code.edges.push_back(*first);
  while (code.edge_count() < g.edge_count()) {
    const auto t = mincode_detail::next_minimal(g, code, occs);
    if (!t) throw Error("min_dfs_code: graph is not connected");
    code.edges.push_back(*t);
  }
  return code;
}

// Minimality test: grows the minimal code of the pattern graph tuple by
// tuple and bails out at the first position where a smaller tuple exists.
inline bool is_canonical(const DfsCode& code) {
  if (code.edges.empty()) return false;
  const LabeledGraph g = code_to_graph(code);
  std::vector<std::vector<int>> occs;
  const auto first = mincode_detail::minimal_first_tuple(g, occs);
  if (!first || !(*first == code.edges.front())) return false;
  DfsCode prefix;
  prefix.edges.push_back(*first);
  for (std::size_t pos = 1; pos < code.edges.size(); ++pos) {
    const auto t = mincode_detail::next_minimal(g, prefix, occs);
    if (!t || !(*t == code.edges[pos])) return false;
    prefix.edges.push_back(*t);
  }
  return true;
}

}  // namespace dsspan
