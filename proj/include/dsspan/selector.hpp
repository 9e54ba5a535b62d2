#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dsspan/miner.hpp"
#include "dsspan/numeric.hpp"

namespace dsspan {

struct SelectorConfig {
  std::optional<int> budget_k;  // nullopt: unlimited
  double tau = 0.95;            // dataset coverage fraction in (0, 1]

  void check() const {
    if (!(tau > 0.0 && tau <= 1.0)) throw Error("tau must be in (0, 1]");
    if (budget_k && *budget_k < 1) throw Error("budget_k must be >= 1");
  }
};

// Shannon entropy in bits over class counts, with 0 * log 0 = 0.
inline double entropy(std::span<const int> label_counts) {
  long long total = 0;
  for (int c : label_counts) total += c;
  if (total <= 0) throw Error("entropy: all counts are zero");
  double h = 0.0;
  for (int c : label_counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

namespace selector_detail {

inline std::vector<int> class_counts(std::span<const int> labels) {
  int classes = 0;
  for (int y : labels) classes = std::max(classes, y + 1);
  std::vector<int> counts(static_cast<std::size_t>(classes), 0);
  for (int y : labels) ++counts[static_cast<std::size_t>(y)];
  return counts;
}

}  // namespace selector_detail

// IG(S) = H(y) - (|I|/N) H(y | covered) - (|Ic|/N) H(y | uncovered).
// Empty and full covers come out exactly 0: the lone conditional entropy is
// computed from the same counts as H(y), so the subtraction cancels bitwise.
inline double information_gain(std::span<const int> pattern_cover, std::span<const int> labels,
                               int n) {
  if (static_cast<int>(labels.size()) != n) throw Error("information_gain: labels length != N");
  const std::vector<int> total = selector_detail::class_counts(labels);
  std::vector<int> covered(total.size(), 0);
  for (int gid : pattern_cover) {
    if (gid < 0 || gid >= n) throw Error("information_gain: cover id out of range");
    ++covered[static_cast<std::size_t>(labels[static_cast<std::size_t>(gid)])];
  }
  std::vector<int> uncovered(total.size());
  long long n_cov = 0;
  for (std::size_t c = 0; c < total.size(); ++c) {
    uncovered[c] = total[c] - covered[c];
    n_cov += covered[c];
  }
  const double h_total = entropy(total);
  double weighted = 0.0;
  if (n_cov > 0) {
    weighted += (static_cast<double>(n_cov) / n) * entropy(covered);
  }
  if (n_cov < n) {
    weighted += (static_cast<double>(n - n_cov) / n) * entropy(uncovered);
  }
  double ig = h_total - weighted;
  if (ig < 0.0) ig = 0.0;  // guard half-ulp rounding below zero
  if (ig > h_total) ig = h_total;
  return ig;
}

struct ScoredCandidate {
  PatternRecord pattern;
  bool filler = false;
  double ig = 0.0;
  double we = 0.0;  // weighted entropy, H(y) - ig
};

// Scores every candidate, fillers included, against training labels.
// Output order mirrors the candidate order.
inline std::vector<ScoredCandidate> score_all(const MiningResult& mined,
                                              std::span<const int> labels) {
  if (static_cast<int>(labels.size()) != mined.graph_count) {
    throw Error("score_all: labels length " + std::to_string(labels.size()) +
                " != graph count " + std::to_string(mined.graph_count));
  }
  const double h_total = entropy(selector_detail::class_counts(labels));
  std::vector<ScoredCandidate> out;
  out.reserve(mined.candidates.size());
  for (std::size_t i = 0; i < mined.candidates.size(); ++i) {
    ScoredCandidate sc;
    sc.pattern = mined.candidates[i];
    sc.filler = mined.filler_flags[i] != 0;
    sc.ig = information_gain(sc.pattern.occurrence_graphs, labels, mined.graph_count);
    sc.we = h_total - sc.ig;
    out.push_back(std::move(sc));
  }
  return out;
}

struct SelectionResult {
  std::vector<ScoredCandidate> selected;
  std::vector<int> covered;  // sorted union of selected cover sets
  double coverage_fraction = 0.0;
  bool constraint_met = false;
  double label_entropy = 0.0;
};

// Greedy scan in descending IG order (ties: fewer edges, then code order).
// A candidate is taken iff the budget allows and it strictly grows the
// covered set; the scan stops once tau * N graphs are covered.
inline SelectionResult select(std::vector<ScoredCandidate> scored, const SelectorConfig& cfg,
                              int n) {
  cfg.check();
  std::sort(scored.begin(), scored.end(), [](const ScoredCandidate& a, const ScoredCandidate& b) {
    if (a.ig != b.ig) return a.ig > b.ig;
    if (a.pattern.code.edge_count() != b.pattern.code.edge_count()) {
      return a.pattern.code.edge_count() < b.pattern.code.edge_count();
    }
    return compare_codes(a.pattern.code, b.pattern.code) < 0;
  });

  const int target = exact_ceil_product(cfg.tau, n);
  SelectionResult result;
  std::vector<char> covered_mask(static_cast<std::size_t>(n), 0);
  int covered_count = 0;
  for (ScoredCandidate& sc : scored) {
    if (cfg.budget_k && static_cast<int>(result.selected.size()) >= *cfg.budget_k) break;
    int gain = 0;
    for (int gid : sc.pattern.occurrence_graphs) {
      gain += covered_mask[static_cast<std::size_t>(gid)] == 0;
    }
    if (gain == 0) continue;
    for (int gid : sc.pattern.occurrence_graphs) covered_mask[static_cast<std::size_t>(gid)] = 1;
    covered_count += gain;
    result.selected.push_back(std::move(sc));
    if (covered_count >= target) break;
  }
  for (int gid = 0; gid < n; ++gid) {
    if (covered_mask[static_cast<std::size_t>(gid)]) result.covered.push_back(gid);
  }
  result.coverage_fraction = n > 0 ? static_cast<double>(covered_count) / n : 0.0;
  result.constraint_met = covered_count >= target;
  return result;
}

// --- serialization ---------------------------------------------------------

inline nlohmann::json selection_result_to_json(const SelectionResult& r,
                                               const SelectorConfig& cfg) {
  nlohmann::json j;
  j["config"]["budget_k"] = cfg.budget_k ? nlohmann::json(*cfg.budget_k) : nlohmann::json(nullptr);
  j["config"]["tau"] = cfg.tau;
  j["label_entropy"] = r.label_entropy;
  nlohmann::json sel = nlohmann::json::array();
  for (const ScoredCandidate& sc : r.selected) {
    sel.push_back({{"code", sc.pattern.code.to_string()},
                   {"ig", sc.ig},
                   {"we", sc.we},
                   {"cover_size", sc.pattern.support()},
                   {"edge_count", sc.pattern.code.edge_count()},
                   {"filler", sc.filler}});
  }
  j["selected"] = std::move(sel);
  j["covered_count"] = static_cast<int>(r.covered.size());
  j["coverage_fraction"] = r.coverage_fraction;
  j["constraint_met"] = r.constraint_met;
  return j;
}

}  // namespace dsspan
