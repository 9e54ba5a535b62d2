#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dsspan {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Neighbor {
  int to = 0;
  int edge_label = 0;
};

struct LabeledEdge {
  int u = 0;
  int v = 0;
  int label = 0;
};

// One dataset member: an undirected graph with vertex and edge labels.
// Vertex ids are the indices into vertex_labels; each undirected edge is
// stored once. Labels are dense interned symbols (see GraphDataset side
// tables for the raw values).
struct LabeledGraph {
  int graph_id = 0;
  std::vector<int> vertex_labels;
  std::vector<LabeledEdge> edges;
  std::vector<std::vector<Neighbor>> adjacency;

  int vertex_count() const { return static_cast<int>(vertex_labels.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  void rebuild_adjacency() {
    adjacency.assign(vertex_labels.size(), {});
    for (const LabeledEdge& e : edges) {
      if (e.u < 0 || e.u >= vertex_count() || e.v < 0 || e.v >= vertex_count()) continue;
      adjacency[static_cast<std::size_t>(e.u)].push_back({e.v, e.label});
      if (e.v != e.u) adjacency[static_cast<std::size_t>(e.v)].push_back({e.u, e.label});
    }
    for (auto& nbrs : adjacency) {
      std::sort(nbrs.begin(), nbrs.end(), [](const Neighbor& a, const Neighbor& b) {
        return a.to != b.to ? a.to < b.to : a.edge_label < b.edge_label;
      });
    }
  }

  const std::vector<Neighbor>& neighbors(int v) const {
    return adjacency[static_cast<std::size_t>(v)];
  }

  // -1 if u and v are not adjacent.
  int edge_label_between(int u, int v) const {
    for (const Neighbor& n : neighbors(u)) {
      if (n.to == v) return n.edge_label;
    }
    return -1;
  }
};

inline LabeledGraph make_graph(int graph_id, std::vector<int> vertex_labels,
                               std::vector<LabeledEdge> edges) {
  LabeledGraph g;
  g.graph_id = graph_id;
  g.vertex_labels = std::move(vertex_labels);
  g.edges = std::move(edges);
  g.rebuild_adjacency();
  return g;
}

struct GraphDataset {
  std::string name;
  std::vector<LabeledGraph> graphs;
  std::vector<int> labels;  // class per graph, 0..class_count-1
  int class_count = 0;
  int vertex_label_count = 0;
  int edge_label_count = 0;
  // Interned symbol -> raw value from the source files, kept for reporting.
  std::vector<long long> raw_vertex_labels;
  std::vector<long long> raw_edge_labels;
  std::vector<long long> raw_class_labels;

  int size() const { return static_cast<int>(graphs.size()); }
};

// Integrity check. Violations are data, not errors: the return value is a
// list of human-readable descriptions, empty iff the dataset is well formed.
inline std::vector<std::string> validate(const GraphDataset& ds) {
  std::vector<std::string> out;
  auto note = [&out](std::string msg) { out.push_back(std::move(msg)); };

  if (ds.graphs.empty()) note("dataset has no graphs");
  if (ds.class_count < 1) note("class_count must be at least 1");
  if (ds.labels.size() != ds.graphs.size()) {
    note("labels length " + std::to_string(ds.labels.size()) + " != graph count " +
         std::to_string(ds.graphs.size()));
  }
  for (std::size_t i = 0; i < ds.labels.size(); ++i) {
    if (ds.labels[i] < 0 || ds.labels[i] >= ds.class_count) {
      note("class label " + std::to_string(ds.labels[i]) + " of graph " + std::to_string(i) +
           " outside [0, " + std::to_string(ds.class_count) + ")");
    }
  }

  for (std::size_t gi = 0; gi < ds.graphs.size(); ++gi) {
    const LabeledGraph& g = ds.graphs[gi];
    const std::string id = std::to_string(gi);
    if (g.graph_id != static_cast<int>(gi)) {
      note("graph " + id + " carries graph_id " + std::to_string(g.graph_id));
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
      int l = g.vertex_labels[static_cast<std::size_t>(v)];
      if (l < 0 || l >= ds.vertex_label_count) {
        note("vertex label " + std::to_string(l) + " out of range in graph " + id);
      }
    }
    std::vector<std::pair<int, int>> seen;
    for (const LabeledEdge& e : g.edges) {
      if (e.u < 0 || e.u >= g.vertex_count() || e.v < 0 || e.v >= g.vertex_count()) {
        note("edge endpoint out of range in graph " + id);
        continue;
      }
      if (e.u == e.v) {
        note("self-loop in graph " + id);
        continue;
      }
      if (e.label < 0 || e.label >= ds.edge_label_count) {
        note("edge label " + std::to_string(e.label) + " out of range in graph " + id);
      }
      seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      note("duplicate undirected edge in graph " + id);
    }
  }
  return out;
}

}  // namespace dsspan
