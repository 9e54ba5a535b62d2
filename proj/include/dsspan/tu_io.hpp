#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dsspan/graph.hpp"

// TU benchmark format: a directory holding <DS>_A.txt (edge list "i, j" with
// 1-based global node ids, every undirected edge listed in both directions),
// <DS>_graph_indicator.txt (line k = 1-based graph id of node k),
// <DS>_graph_labels.txt (one integer per graph), and optionally
// <DS>_node_labels.txt / <DS>_edge_labels.txt aligned with node order and
// _A.txt line order.

namespace dsspan {

struct TuLoadOptions {
  // When the node label file is missing, label every vertex 0. With
  // relabel_by_degree set, use min(degree, degree_label_cap) instead.
  bool relabel_by_degree = false;
  int degree_label_cap = 10;
};

namespace tu_detail {

inline std::vector<std::string> read_lines(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("missing required file: " + file.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

inline bool blank(const std::string& s) {
  return s.find_first_not_of(" \t") == std::string::npos;
}

inline long long parse_int(const std::string& token, const std::filesystem::path& file,
                           std::size_t line_no) {
  std::size_t b = token.find_first_not_of(" \t");
  std::size_t e = token.find_last_not_of(" \t");
  if (b == std::string::npos) {
    throw Error(file.filename().string() + ":" + std::to_string(line_no) +
                ": expected integer, got empty token");
  }
  const std::string t = token.substr(b, e - b + 1);
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(t, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != t.size() || t.empty()) {
    throw Error(file.filename().string() + ":" + std::to_string(line_no) +
                ": expected integer, got '" + t + "'");
  }
  return value;
}

// Dense interning: sorted unique raw values -> 0..k-1.
inline std::pair<std::vector<int>, std::vector<long long>> intern(
    const std::vector<long long>& raw) {
  std::vector<long long> table(raw.begin(), raw.end());
  std::sort(table.begin(), table.end());
  table.erase(std::unique(table.begin(), table.end()), table.end());
  std::vector<int> dense(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    dense[i] = static_cast<int>(
        std::lower_bound(table.begin(), table.end(), raw[i]) - table.begin());
  }
  return {std::move(dense), std::move(table)};
}

}  // namespace tu_detail

inline GraphDataset load_tu_dataset(const std::filesystem::path& directory,
                                    const std::string& name,
                                    const TuLoadOptions& options = {}) {
  namespace td = tu_detail;
  const auto file = [&](const char* suffix) { return directory / (name + suffix); };

  const auto indicator_path = file("_graph_indicator.txt");
  const auto graph_labels_path = file("_graph_labels.txt");
  const auto adjacency_path = file("_A.txt");

  // Node -> graph assignment. Graph ids in the files are 1-based and assumed
  // contiguous; nodes of one graph get local ids 0.. in global id order.
  const auto indicator_lines = td::read_lines(indicator_path);
  std::vector<int> node_graph;  // 0-based graph id per global node (0-based)
  for (std::size_t i = 0; i < indicator_lines.size(); ++i) {
    if (td::blank(indicator_lines[i])) continue;
    long long gid = td::parse_int(indicator_lines[i], indicator_path, i + 1);
    if (gid < 1) throw Error(indicator_path.filename().string() + ":" + std::to_string(i + 1) +
                             ": graph id must be positive");
    node_graph.push_back(static_cast<int>(gid - 1));
  }
  const std::size_t node_count = node_graph.size();
  if (node_count == 0) throw Error("empty graph indicator: " + indicator_path.string());
  const int graph_count = *std::max_element(node_graph.begin(), node_graph.end()) + 1;

  std::vector<int> node_local(node_count);
  std::vector<int> graph_size(static_cast<std::size_t>(graph_count), 0);
  for (std::size_t i = 0; i < node_count; ++i) {
    node_local[i] = graph_size[static_cast<std::size_t>(node_graph[i])]++;
  }

  // Graph labels, remapped to 0..|C|-1 preserving sorted raw order.
  std::vector<long long> raw_graph_labels;
  {
    const auto lines = td::read_lines(graph_labels_path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (td::blank(lines[i])) continue;
      raw_graph_labels.push_back(td::parse_int(lines[i], graph_labels_path, i + 1));
    }
  }
  if (static_cast<int>(raw_graph_labels.size()) != graph_count) {
    throw Error("graph label count " + std::to_string(raw_graph_labels.size()) +
                " != graph count " + std::to_string(graph_count));
  }

  // Node labels: optional file, else uniform 0 (or degree-derived).
  std::vector<long long> raw_node_labels;
  const auto node_labels_path = file("_node_labels.txt");
  const bool have_node_labels = std::filesystem::exists(node_labels_path);
  if (have_node_labels) {
    const auto lines = td::read_lines(node_labels_path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (td::blank(lines[i])) continue;
      raw_node_labels.push_back(td::parse_int(lines[i], node_labels_path, i + 1));
    }
    if (raw_node_labels.size() != node_count) {
      throw Error("node label count " + std::to_string(raw_node_labels.size()) +
                  " != node count " + std::to_string(node_count));
    }
  } else {
    raw_node_labels.assign(node_count, 0);
  }

  // Edges. Both directions appear in _A.txt; deduplicate on the normalized
  // pair, keeping the first listed label.
  const auto adjacency_lines = td::read_lines(adjacency_path);
  const auto edge_labels_path = file("_edge_labels.txt");
  const bool have_edge_labels = std::filesystem::exists(edge_labels_path);
  std::vector<std::string> edge_label_lines;
  if (have_edge_labels) edge_label_lines = td::read_lines(edge_labels_path);

  struct RawEdge {
    int graph;
    int u, v;  // local ids, u <= v
    long long label;
  };
  std::vector<RawEdge> raw_edges;
  std::map<std::tuple<int, int, int>, bool> seen;
  std::size_t edge_line_index = 0;  // counts non-blank _A.txt lines
  for (std::size_t i = 0; i < adjacency_lines.size(); ++i) {
    const std::string& line = adjacency_lines[i];
    if (td::blank(line)) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(adjacency_path.filename().string() + ":" + std::to_string(i + 1) +
                  ": expected 'i, j'");
    }
    long long a = td::parse_int(line.substr(0, comma), adjacency_path, i + 1);
    long long b = td::parse_int(line.substr(comma + 1), adjacency_path, i + 1);
    long long label = 0;
    if (have_edge_labels) {
      if (edge_line_index >= edge_label_lines.size()) {
        throw Error("edge label file shorter than edge list: " + edge_labels_path.string());
      }
      label = td::parse_int(edge_label_lines[edge_line_index], edge_labels_path,
                            edge_line_index + 1);
    }
    ++edge_line_index;
    if (a < 1 || b < 1 || a > static_cast<long long>(node_count) ||
        b > static_cast<long long>(node_count)) {
      throw Error(adjacency_path.filename().string() + ":" + std::to_string(i + 1) +
                  ": node id out of range");
    }
    const int ga = node_graph[static_cast<std::size_t>(a - 1)];
    const int gb = node_graph[static_cast<std::size_t>(b - 1)];
    if (ga != gb) {
      throw Error(adjacency_path.filename().string() + ":" + std::to_string(i + 1) + ": edge (" +
                  std::to_string(a) + ", " + std::to_string(b) + ") crosses graph boundary");
    }
    int lu = node_local[static_cast<std::size_t>(a - 1)];
    int lv = node_local[static_cast<std::size_t>(b - 1)];
    if (lu > lv) std::swap(lu, lv);
    if (seen.emplace(std::make_tuple(ga, lu, lv), true).second) {
      raw_edges.push_back({ga, lu, lv, label});
    }
  }

  // Degree relabeling wants degrees before interning.
  if (!have_node_labels && options.relabel_by_degree) {
    std::vector<int> degree(node_count, 0);
    std::vector<std::vector<std::size_t>> first_global(static_cast<std::size_t>(graph_count));
    for (std::size_t i = 0; i < node_count; ++i) {
      auto& slots = first_global[static_cast<std::size_t>(node_graph[i])];
      if (static_cast<int>(slots.size()) <= node_local[i]) slots.resize(node_local[i] + 1);
      slots[static_cast<std::size_t>(node_local[i])] = i;
    }
    for (const RawEdge& e : raw_edges) {
      ++degree[first_global[static_cast<std::size_t>(e.graph)][static_cast<std::size_t>(e.u)]];
      if (e.v != e.u)
        ++degree[first_global[static_cast<std::size_t>(e.graph)][static_cast<std::size_t>(e.v)]];
    }
    for (std::size_t i = 0; i < node_count; ++i) {
      raw_node_labels[i] = std::min(degree[i], options.degree_label_cap);
    }
  }

  auto [node_dense, node_table] = td::intern(raw_node_labels);
  std::vector<long long> raw_edge_label_values;
  raw_edge_label_values.reserve(raw_edges.size());
  for (const RawEdge& e : raw_edges) raw_edge_label_values.push_back(e.label);
  if (raw_edge_label_values.empty()) raw_edge_label_values.push_back(0);
  auto [edge_dense, edge_table] = td::intern(raw_edge_label_values);
  auto [class_dense, class_table] = td::intern(raw_graph_labels);

  GraphDataset ds;
  ds.name = name;
  ds.class_count = static_cast<int>(class_table.size());
  ds.vertex_label_count = static_cast<int>(node_table.size());
  ds.edge_label_count = static_cast<int>(edge_table.size());
  ds.raw_vertex_labels = std::move(node_table);
  ds.raw_edge_labels = std::move(edge_table);
  ds.raw_class_labels = std::move(class_table);
  ds.labels = std::move(class_dense);

  ds.graphs.resize(static_cast<std::size_t>(graph_count));
  for (int g = 0; g < graph_count; ++g) {
    ds.graphs[static_cast<std::size_t>(g)].graph_id = g;
    ds.graphs[static_cast<std::size_t>(g)].vertex_labels.resize(
        static_cast<std::size_t>(graph_size[static_cast<std::size_t>(g)]));
  }
  for (std::size_t i = 0; i < node_count; ++i) {
    ds.graphs[static_cast<std::size_t>(node_graph[i])]
        .vertex_labels[static_cast<std::size_t>(node_local[i])] = node_dense[i];
  }
  for (std::size_t i = 0; i < raw_edges.size(); ++i) {
    const RawEdge& e = raw_edges[i];
    ds.graphs[static_cast<std::size_t>(e.graph)].edges.push_back({e.u, e.v, edge_dense[i]});
  }
  for (auto& g : ds.graphs) g.rebuild_adjacency();
  return ds;
}

// Writes the dataset back out in TU format using the raw label side tables.
// Each undirected edge is emitted in both directions, per the format.
inline void save_tu_dataset(const GraphDataset& ds, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  const auto file = [&](const char* suffix) { return directory / (ds.name + suffix); };
  auto raw_of = [](const std::vector<long long>& table, int dense) {
    return dense >= 0 && dense < static_cast<int>(table.size())
               ? table[static_cast<std::size_t>(dense)]
               : dense;
  };

  std::ofstream a(file("_A.txt"));
  std::ofstream ind(file("_graph_indicator.txt"));
  std::ofstream gl(file("_graph_labels.txt"));
  std::ofstream nl(file("_node_labels.txt"));
  std::ofstream el(file("_edge_labels.txt"));

  int next_global = 1;  // 1-based global node ids
  std::vector<int> base(ds.graphs.size(), 0);
  for (std::size_t g = 0; g < ds.graphs.size(); ++g) {
    base[g] = next_global;
    for (int lbl : ds.graphs[g].vertex_labels) {
      ind << (g + 1) << "\n";
      nl << raw_of(ds.raw_vertex_labels, lbl) << "\n";
      ++next_global;
    }
    gl << raw_of(ds.raw_class_labels, ds.labels.size() > g ? ds.labels[g] : 0) << "\n";
  }
  for (std::size_t g = 0; g < ds.graphs.size(); ++g) {
    for (const LabeledEdge& e : ds.graphs[g].edges) {
      const long long raw = raw_of(ds.raw_edge_labels, e.label);
      a << (base[g] + e.u) << ", " << (base[g] + e.v) << "\n";
      el << raw << "\n";
      a << (base[g] + e.v) << ", " << (base[g] + e.u) << "\n";
      el << raw << "\n";
    }
  }
}

}  // namespace dsspan
