#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dsspan/dfs_code.hpp"
#include "dsspan/graph.hpp"
#include "dsspan/isomorphism.hpp"

namespace dsspan {

// Row i is the normalized incidence vector of graph i: entry k is 1/m_i when
// feature k occurs in the graph (m_i = number of occurring features), else 0.
// All-zero rows are legal (graph contains no selected feature).
struct FeatureMatrix {
  std::vector<std::vector<double>> rows;
  std::vector<DfsCode> feature_codes;

  int row_count() const { return static_cast<int>(rows.size()); }
  int feature_count() const { return static_cast<int>(feature_codes.size()); }

  int zero_row_count() const {
    int z = 0;
    for (const auto& row : rows) {
      bool any = false;
      for (double v : row) any |= v != 0.0;
      z += !any;
    }
    return z;
  }
};

// Presence is decided by subgraph-isomorphism search, so the same call works
// for graphs the miner never saw (test folds).
inline FeatureMatrix build_features(std::span<const LabeledGraph> graphs,
                                    const std::vector<DfsCode>& features) {
  FeatureMatrix fm;
  fm.feature_codes = features;
  fm.rows.reserve(graphs.size());
  for (const LabeledGraph& g : graphs) {
    std::vector<double> row(features.size(), 0.0);
    int m = 0;
    for (std::size_t k = 0; k < features.size(); ++k) {
      if (contains(g, features[k])) {
        row[k] = 1.0;
        ++m;
      }
    }
    if (m > 0) {
      const double w = 1.0 / m;
      for (double& v : row) v *= w;
    }
    fm.rows.push_back(std::move(row));
  }
  return fm;
}

}  // namespace dsspan
