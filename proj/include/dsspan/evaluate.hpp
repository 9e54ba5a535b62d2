#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <mutex>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dsspan/features.hpp"
#include "dsspan/graph.hpp"
#include "dsspan/miner.hpp"
#include "dsspan/model.hpp"
#include "dsspan/rng.hpp"
#include "dsspan/selector.hpp"

namespace dsspan {

struct Protocol {
  int repetitions = 10;
  int folds = 10;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency

  void check() const {
    if (repetitions < 1) throw Error("repetitions must be >= 1");
    if (folds < 2) throw Error("folds must be >= 2");
  }
};

// Fold assignment preserving class proportions: per class, members are
// shuffled and dealt round-robin, with the running counter carried across
// classes so fold sizes stay balanced.
inline std::vector<std::vector<int>> stratified_folds(std::span<const int> labels, int folds,
                                                      Rng& rng) {
  int classes = 0;
  for (int y : labels) classes = std::max(classes, y + 1);
  std::vector<std::vector<int>> members(static_cast<std::size_t>(classes));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    members[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));
  }
  for (std::size_t c = 0; c < members.size(); ++c) {
    if (static_cast<int>(members[c].size()) < folds) {
      throw Error("class " + std::to_string(c) + " has " + std::to_string(members[c].size()) +
                  " members, fewer than " + std::to_string(folds) + " folds");
    }
  }
  std::vector<std::vector<int>> assignment(static_cast<std::size_t>(folds));
  int dealt = 0;
  for (auto& m : members) {
    rng.shuffle(m);
    for (int gid : m) {
      assignment[static_cast<std::size_t>(dealt % folds)].push_back(gid);
      ++dealt;
    }
  }
  for (auto& fold : assignment) std::sort(fold.begin(), fold.end());
  return assignment;
}

struct FoldOutcome {
  int repetition = 0;
  int fold = 0;
  std::vector<int> test_ids;
  int test_size = 0;
  int correct = 0;
  double accuracy = 0.0;
  int candidate_count = 0;
  int filler_count = 0;
  int feature_count = 0;
  bool constraint_met = false;
  int zero_feature_rows = 0;  // test rows containing no selected feature
  double mine_seconds = 0.0;
  double select_seconds = 0.0;
  double embed_seconds = 0.0;
};

struct EvalReport {
  std::string dataset_name;
  int graph_count = 0;
  int class_count = 0;
  Protocol protocol;
  MinerConfig miner;
  SelectorConfig selector;
  ModelConfig model;
  std::vector<FoldOutcome> cells;

  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // population std over cells
  double avg_feature_count = 0.0;
  double avg_candidate_count = 0.0;
  double avg_mine_seconds = 0.0;
  double avg_select_seconds = 0.0;
  double avg_embed_seconds = 0.0;
  int total_zero_feature_rows = 0;

  void recompute_aggregates() {
    const double n = static_cast<double>(cells.size());
    mean_accuracy = std_accuracy = avg_feature_count = avg_candidate_count = 0.0;
    avg_mine_seconds = avg_select_seconds = avg_embed_seconds = 0.0;
    total_zero_feature_rows = 0;
    if (cells.empty()) return;
    for (const FoldOutcome& c : cells) {
      mean_accuracy += c.accuracy;
      avg_feature_count += c.feature_count;
      avg_candidate_count += c.candidate_count;
      avg_mine_seconds += c.mine_seconds;
      avg_select_seconds += c.select_seconds;
      avg_embed_seconds += c.embed_seconds;
      total_zero_feature_rows += c.zero_feature_rows;
    }
    mean_accuracy /= n;
    avg_feature_count /= n;
    avg_candidate_count /= n;
    avg_mine_seconds /= n;
    avg_select_seconds /= n;
    avg_embed_seconds /= n;
    double ss = 0.0;
    for (const FoldOutcome& c : cells) {
      const double d = c.accuracy - mean_accuracy;
      ss += d * d;
    }
    std_accuracy = std::sqrt(ss / n);
  }
};

namespace eval_detail {

inline GraphDataset subset_dataset(const GraphDataset& ds, std::span<const int> ids) {
  GraphDataset out;
  out.name = ds.name;
  out.class_count = ds.class_count;
  out.vertex_label_count = ds.vertex_label_count;
  out.edge_label_count = ds.edge_label_count;
  out.raw_vertex_labels = ds.raw_vertex_labels;
  out.raw_edge_labels = ds.raw_edge_labels;
  out.raw_class_labels = ds.raw_class_labels;
  for (int id : ids) {
    LabeledGraph g = ds.graphs[static_cast<std::size_t>(id)];
    g.graph_id = static_cast<int>(out.graphs.size());
    out.graphs.push_back(std::move(g));
    out.labels.push_back(ds.labels[static_cast<std::size_t>(id)]);
  }
  return out;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// One (repetition, fold) cell: mine, top up coverage, score, select, build
// features, train, score the held-out fold. Only training graphs ever reach
// the miner, the selector or the optimizer.
inline FoldOutcome run_fold(const GraphDataset& ds, const MinerConfig& miner_cfg,
                            const SelectorConfig& selector_cfg, const ModelConfig& model_cfg,
                            std::uint64_t seed, int repetition, int fold,
                            const std::vector<int>& test_ids) {
  const int n = ds.size();
  std::vector<char> is_test(static_cast<std::size_t>(n), 0);
  for (int id : test_ids) {
    if (id < 0 || id >= n || is_test[static_cast<std::size_t>(id)]) {
      throw Error("fold plan corrupt: bad test id");
    }
    is_test[static_cast<std::size_t>(id)] = 1;
  }
  std::vector<int> train_ids;
  for (int id = 0; id < n; ++id) {
    if (!is_test[static_cast<std::size_t>(id)]) train_ids.push_back(id);
  }

  FoldOutcome out;
  out.repetition = repetition;
  out.fold = fold;
  out.test_ids = test_ids;
  out.test_size = static_cast<int>(test_ids.size());

  const GraphDataset train_ds = subset_dataset(ds, train_ids);
  const GraphDataset test_ds = subset_dataset(ds, test_ids);

  auto t0 = std::chrono::steady_clock::now();
  MiningResult mined = complete_coverage(train_ds, mine(train_ds, miner_cfg), miner_cfg);
  out.mine_seconds = seconds_since(t0);
  out.candidate_count = mined.candidate_count();
  out.filler_count = mined.filler_count();

  t0 = std::chrono::steady_clock::now();
  std::vector<ScoredCandidate> scored = score_all(mined, train_ds.labels);
  SelectionResult selection = select(std::move(scored), selector_cfg, train_ds.size());
  out.select_seconds = seconds_since(t0);
  out.feature_count = static_cast<int>(selection.selected.size());
  out.constraint_met = selection.constraint_met;

  t0 = std::chrono::steady_clock::now();
  std::vector<DfsCode> codes;
  codes.reserve(selection.selected.size());
  for (const ScoredCandidate& sc : selection.selected) codes.push_back(sc.pattern.code);

  const FeatureMatrix x_train = build_features(train_ds.graphs, codes);
  const FeatureMatrix x_test = build_features(test_ds.graphs, codes);
  out.zero_feature_rows = x_test.zero_row_count();

  int correct = 0;
  if (codes.empty()) {
    // No features: predict the tie-break class for every test graph.
    for (int y : test_ds.labels) correct += y == 0;
  } else {
    Rng rng(Rng::mix({seed, 0x6f1d5ULL, static_cast<std::uint64_t>(repetition),
                      static_cast<std::uint64_t>(fold)}));
    EmbedModel model =
        EmbedModel::init(x_train.feature_count(), model_cfg.embedding_dim, ds.class_count, rng);
    train(model, x_train, train_ds.labels, model_cfg, rng);
    for (std::size_t i = 0; i < x_test.rows.size(); ++i) {
      correct += predict(model, x_test.rows[i]) == test_ds.labels[i];
    }
  }
  out.embed_seconds = seconds_since(t0);
  out.correct = correct;
  out.accuracy = out.test_size > 0 ? static_cast<double>(correct) / out.test_size : 0.0;
  return out;
}

}  // namespace eval_detail

// Repeated stratified k-fold cross-validation. Fold assignments are seeded
// per repetition and model runs per (repetition, fold), so the report is a
// pure function of (dataset, configs, seed) regardless of thread count.
inline EvalReport cross_validate(const GraphDataset& ds, const MinerConfig& miner_cfg,
                                 const SelectorConfig& selector_cfg, const ModelConfig& model_cfg,
                                 const Protocol& protocol) {
  protocol.check();
  miner_cfg.check();
  selector_cfg.check();
  model_cfg.check();

  EvalReport report;
  report.dataset_name = ds.name;
  report.graph_count = ds.size();
  report.class_count = ds.class_count;
  report.protocol = protocol;
  report.miner = miner_cfg;
  report.selector = selector_cfg;
  report.model = model_cfg;

  std::vector<std::vector<std::vector<int>>> plans;
  plans.reserve(static_cast<std::size_t>(protocol.repetitions));
  for (int r = 0; r < protocol.repetitions; ++r) {
    Rng rng(Rng::mix({protocol.seed, 0xf01d5ULL, static_cast<std::uint64_t>(r)}));
    plans.push_back(stratified_folds(ds.labels, protocol.folds, rng));
  }

  const int jobs = protocol.repetitions * protocol.folds;
  report.cells.resize(static_cast<std::size_t>(jobs));
  std::atomic<int> next_job{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const int job = next_job.fetch_add(1);
      if (job >= jobs || failed.load()) return;
      const int r = job / protocol.folds;
      const int f = job % protocol.folds;
      try {
        report.cells[static_cast<std::size_t>(job)] = eval_detail::run_fold(
            ds, miner_cfg, selector_cfg, model_cfg, protocol.seed, r, f,
            plans[static_cast<std::size_t>(r)][static_cast<std::size_t>(f)]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failure = e.what();
        failed.store(true);
        return;
      }
    }
  };

  int thread_count = protocol.threads > 0
                         ? protocol.threads
                         : static_cast<int>(std::thread::hardware_concurrency());
  if (thread_count < 1) thread_count = 1;
  thread_count = std::min(thread_count, jobs);
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw Error("cross_validate: " + failure);

  report.recompute_aggregates();
  return report;
}

// --- reports ---------------------------------------------------------------

// Deterministic report body: everything except wall-clock timings, which are
// serialized separately so identical (dataset, config, seed) runs produce
// byte-identical files.
inline nlohmann::json report_json(const EvalReport& r) {
  nlohmann::json j;
  j["dataset"] = {{"name", r.dataset_name},
                  {"graph_count", r.graph_count},
                  {"class_count", r.class_count}};
  j["protocol"] = {{"repetitions", r.protocol.repetitions},
                   {"folds", r.protocol.folds},
                   {"seed", r.protocol.seed}};
  j["miner"] = miner_config_to_json(r.miner);
  j["selector"] = {{"budget_k", r.selector.budget_k ? nlohmann::json(*r.selector.budget_k)
                                                    : nlohmann::json(nullptr)},
                   {"tau", r.selector.tau}};
  j["model"] = {{"embedding_dim", r.model.embedding_dim},
                {"learning_rate", r.model.learning_rate},
                {"epochs", r.model.epochs}};
  nlohmann::json cells = nlohmann::json::array();
  for (const FoldOutcome& c : r.cells) {
    cells.push_back({{"repetition", c.repetition},
                     {"fold", c.fold},
                     {"test_ids", c.test_ids},
                     {"test_size", c.test_size},
                     {"correct", c.correct},
                     {"accuracy", c.accuracy},
                     {"candidate_count", c.candidate_count},
                     {"filler_count", c.filler_count},
                     {"feature_count", c.feature_count},
                     {"constraint_met", c.constraint_met},
                     {"zero_feature_rows", c.zero_feature_rows}});
  }
  j["cells"] = std::move(cells);
  j["aggregates"] = {{"mean_accuracy", r.mean_accuracy},
                     {"std_accuracy", r.std_accuracy},
                     {"avg_feature_count", r.avg_feature_count},
                     {"avg_candidate_count", r.avg_candidate_count},
                     {"total_zero_feature_rows", r.total_zero_feature_rows}};
  return j;
}

inline nlohmann::json timings_json(const EvalReport& r) {
  nlohmann::json j;
  j["avg_mine_seconds"] = r.avg_mine_seconds;
  j["avg_select_seconds"] = r.avg_select_seconds;
  j["avg_embed_seconds"] = r.avg_embed_seconds;
  nlohmann::json cells = nlohmann::json::array();
  for (const FoldOutcome& c : r.cells) {
    cells.push_back({{"repetition", c.repetition},
                     {"fold", c.fold},
                     {"mine_seconds", c.mine_seconds},
                     {"select_seconds", c.select_seconds},
                     {"embed_seconds", c.embed_seconds}});
  }
  j["cells"] = std::move(cells);
  return j;
}

inline void write_folds_csv(std::ostream& os, const EvalReport& r) {
  os << "repetition,fold,accuracy,test_size,correct,candidate_count,filler_count,"
        "feature_count,constraint_met,zero_feature_rows,mine_seconds,select_seconds,"
        "embed_seconds\n";
  for (const FoldOutcome& c : r.cells) {
    os << c.repetition << ',' << c.fold << ',' << c.accuracy << ',' << c.test_size << ','
       << c.correct << ',' << c.candidate_count << ',' << c.filler_count << ','
       << c.feature_count << ',' << (c.constraint_met ? 1 : 0) << ',' << c.zero_feature_rows
       << ',' << c.mine_seconds << ',' << c.select_seconds << ',' << c.embed_seconds << '\n';
  }
}

inline std::string summary_csv_header() {
  return "dataset,mode,mean_acc,std,avg_features,avg_mine_seconds";
}

inline std::string summary_csv_row(const EvalReport& r, const std::string& mode) {
  std::ostringstream os;
  os << r.dataset_name << ',' << mode << ',' << r.mean_accuracy << ',' << r.std_accuracy << ','
     << r.avg_feature_count << ',' << r.avg_mine_seconds;
  return os.str();
}

// --- whole-dataset fit (feature/embedding export) ---------------------------

struct FullFitResult {
  MiningResult mined;
  SelectionResult selection;
  FeatureMatrix features;
  EmbedModel model;
  std::vector<std::vector<double>> embeddings;  // hidden vector per graph
};

// Fits the pipeline on the entire dataset; used for matrix exports, not for
// accuracy claims.
inline FullFitResult full_fit(const GraphDataset& ds, const MinerConfig& miner_cfg,
                              const SelectorConfig& selector_cfg, const ModelConfig& model_cfg,
                              std::uint64_t seed) {
  FullFitResult out;
  out.mined = complete_coverage(ds, mine(ds, miner_cfg), miner_cfg);
  out.selection = select(score_all(out.mined, ds.labels), selector_cfg, ds.size());
  std::vector<DfsCode> codes;
  for (const ScoredCandidate& sc : out.selection.selected) codes.push_back(sc.pattern.code);
  out.features = build_features(ds.graphs, codes);
  Rng rng(Rng::mix({seed, 0xF0117ULL}));
  out.model = EmbedModel::init(out.features.feature_count(), model_cfg.embedding_dim,
                               ds.class_count, rng);
  if (!codes.empty()) train(out.model, out.features, ds.labels, model_cfg, rng);
  for (const auto& row : out.features.rows) out.embeddings.push_back(hidden(out.model, row));
  return out;
}

}  // namespace dsspan
