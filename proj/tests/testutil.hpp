#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dsspan/graph.hpp"
#include "dsspan/rng.hpp"

namespace testutil {

struct CorpusParams {
  int graph_count = 8;
  int min_vertices = 4;
  int max_vertices = 8;
  int vertex_labels = 3;
  int edge_labels = 2;
  double extra_edge_prob = 0.25;
  bool connected = true;
  int min_edges = 0;      // pad with extra edges until reached (connected only)
  int edgeless_graphs = 0;
  int classes = 2;
};

// Seeded random dataset. Connected graphs get a random spanning tree plus
// Bernoulli extra edges; class labels are uniform random (no planted signal).
inline dsspan::GraphDataset random_dataset(std::uint64_t seed, const CorpusParams& p) {
  dsspan::Rng rng(seed);
  dsspan::GraphDataset ds;
  ds.name = "random-" + std::to_string(seed);
  ds.class_count = p.classes;
  ds.vertex_label_count = p.vertex_labels;
  ds.edge_label_count = p.edge_labels;
  for (int l = 0; l < p.vertex_labels; ++l) ds.raw_vertex_labels.push_back(l);
  for (int l = 0; l < p.edge_labels; ++l) ds.raw_edge_labels.push_back(l);
  for (int c = 0; c < p.classes; ++c) ds.raw_class_labels.push_back(c);

  for (int gi = 0; gi < p.graph_count; ++gi) {
    const bool edgeless = gi < p.edgeless_graphs;
    const int nv = edgeless ? rng.range(1, 3) : rng.range(p.min_vertices, p.max_vertices);
    std::vector<int> labels;
    for (int v = 0; v < nv; ++v) labels.push_back(rng.below(p.vertex_labels));
    std::vector<dsspan::LabeledEdge> edges;
    std::vector<std::vector<char>> present(nv, std::vector<char>(nv, 0));
    auto add_edge = [&](int a, int b) {
      edges.push_back({a, b, rng.below(p.edge_labels)});
      present[a][b] = present[b][a] = 1;
    };
    if (!edgeless) {
      if (p.connected) {
        for (int v = 1; v < nv; ++v) add_edge(rng.below(v), v);
      }
      for (int a = 0; a < nv; ++a) {
        for (int b = a + 1; b < nv; ++b) {
          if (!present[a][b] && rng.chance(p.extra_edge_prob)) add_edge(a, b);
        }
      }
      while (static_cast<int>(edges.size()) < p.min_edges) {
        bool added = false;
        for (int a = 0; a < nv && !added; ++a) {
          for (int b = a + 1; b < nv && !added; ++b) {
            if (!present[a][b]) {
              add_edge(a, b);
              added = true;
            }
          }
        }
        if (!added) break;  // complete graph, nothing to add
      }
    }
    ds.graphs.push_back(dsspan::make_graph(gi, std::move(labels), std::move(edges)));
    ds.labels.push_back(rng.below(p.classes));
  }
  return ds;
}

// Two-class corpus with planted, class-specific motifs plus random noise:
// class 0 graphs embed a labeled triangle, class 1 graphs a labeled star.
// Clearly separable, so the end-to-end pipeline should score near 1.0.
inline dsspan::GraphDataset planted_motif_dataset(std::uint64_t seed, int per_class) {
  dsspan::Rng rng(seed);
  dsspan::GraphDataset ds;
  ds.name = "planted-" + std::to_string(seed);
  ds.class_count = 2;
  ds.vertex_label_count = 5;
  ds.edge_label_count = 2;
  for (int l = 0; l < 5; ++l) ds.raw_vertex_labels.push_back(l);
  for (int l = 0; l < 2; ++l) ds.raw_edge_labels.push_back(l);
  ds.raw_class_labels = {0, 1};

  for (int cls = 0; cls < 2; ++cls) {
    for (int i = 0; i < per_class; ++i) {
      std::vector<int> labels;
      std::vector<dsspan::LabeledEdge> edges;
      if (cls == 0) {
        labels = {0, 1, 2};  // triangle 0-1-2
        edges = {{0, 1, 0}, {1, 2, 0}, {2, 0, 0}};
      } else {
        labels = {3, 4, 4, 4};  // star centered at label 3
        edges = {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}};
      }
      // noise: a short random tail of shared-vocabulary vertices
      const int tail = rng.range(1, 3);
      for (int t = 0; t < tail; ++t) {
        const int attach = rng.below(static_cast<int>(labels.size()));
        labels.push_back(rng.below(5));
        edges.push_back({attach, static_cast<int>(labels.size()) - 1, rng.below(2)});
      }
      const int gid = static_cast<int>(ds.graphs.size());
      ds.graphs.push_back(dsspan::make_graph(gid, std::move(labels), std::move(edges)));
      ds.labels.push_back(cls);
    }
  }
  return ds;
}

inline std::vector<char> full_mask(int n) { return std::vector<char>(n, 1); }

}  // namespace testutil
