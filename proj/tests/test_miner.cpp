#include <catch_amalgamated.hpp>

#include <set>

#include "dsspan/isomorphism.hpp"
#include "dsspan/miner.hpp"
#include "dsspan/oracle.hpp"
#include "testutil.hpp"

using namespace dsspan;

namespace {

// delta such that ceil(delta * n) lands exactly on the wanted support
double delta_for_support(int support, int n) {
  return (static_cast<double>(support) - 0.5) / static_cast<double>(n);
}

std::set<oracle::CanonicalForm> forms_of(const MiningResult& r, bool include_fillers = false) {
  std::set<oracle::CanonicalForm> forms;
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    if (!include_fillers && r.filler_flags[i]) continue;
    forms.insert(oracle::canonical_form(code_to_graph(r.candidates[i].code)));
  }
  return forms;
}

std::set<std::string> code_set(const MiningResult& r, bool include_fillers = false) {
  std::set<std::string> codes;
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    if (!include_fillers && r.filler_flags[i]) continue;
    codes.insert(r.candidates[i].code.to_string());
  }
  return codes;
}

}  // namespace

TEST_CASE("support threshold uses an exact ceiling") {
  CHECK(support_threshold(1.0, 7) == 7);
  CHECK(support_threshold(0.1, 188) == 19);
  CHECK(support_threshold(0.5, 4) == 2);
  CHECK(support_threshold(delta_for_support(2, 6), 6) == 2);
  CHECK(support_threshold(delta_for_support(1, 7), 7) == 1);
  for (int n = 1; n <= 50; ++n) {
    for (int m = 1; m <= n; ++m) {
      CAPTURE(n, m);
      CHECK(support_threshold(delta_for_support(m, n), n) == m);
    }
  }
}

TEST_CASE("identical single-edge graphs at delta 1 produce one candidate") {
  GraphDataset ds;
  ds.name = "edges";
  ds.class_count = 1;
  ds.vertex_label_count = 2;
  ds.edge_label_count = 1;
  for (int i = 0; i < 5; ++i) {
    ds.graphs.push_back(make_graph(i, {0, 1}, {{0, 1, 0}}));
    ds.labels.push_back(0);
  }
  MinerConfig cfg;
  cfg.delta = 1.0;
  cfg.gamma.reset();
  const MiningResult r = mine(ds, cfg);
  REQUIRE(r.candidates.size() == 1);
  CHECK(r.candidates[0].support() == 5);
  CHECK(r.candidates[0].code.to_string() == "(0,1,0,0,1)");
}

TEST_CASE("baseline mining equals the brute-force frequent set on small corpora") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    testutil::CorpusParams p;
    p.graph_count = 6;
    p.min_vertices = 4;
    p.max_vertices = 7;
    const GraphDataset ds = testutil::random_dataset(seed, p);
    for (int support : {1, 2, 3}) {
      MinerConfig cfg;
      cfg.delta = delta_for_support(support, ds.size());
      cfg.max_edges = 4;
      const MiningResult r = mine_baseline(ds, cfg);
      const auto expected = oracle::brute_frequent(ds, support, 4);
      CAPTURE(seed, support);
      CHECK(forms_of(r) == expected);
    }
  }
}

TEST_CASE("mined candidates are canonical, frequent and duplicate-free") {
  for (std::uint64_t seed = 21; seed <= 24; ++seed) {
    testutil::CorpusParams p;
    const GraphDataset ds = testutil::random_dataset(seed, p);
    MinerConfig cfg;
    cfg.delta = 0.3;
    cfg.min_cov = 2;
    cfg.gamma = 2.0;
    cfg.max_edges = 5;
    const MiningResult r = mine(ds, cfg);
    std::set<std::string> seen;
    for (const PatternRecord& rec : r.candidates) {
      CHECK(is_canonical(rec.code));
      CHECK(rec.support() >= r.threshold);
      CHECK(seen.insert(rec.code.to_string()).second);
      // independent support recount over the whole dataset
      int recount = 0;
      for (const LabeledGraph& g : ds.graphs) recount += contains(g, rec.code);
      CHECK(recount == rec.support());
    }
  }
}

TEST_CASE("capped mining yields a subset of the baseline with less work") {
  for (std::uint64_t seed = 31; seed <= 36; ++seed) {
    testutil::CorpusParams p;
    p.graph_count = 8;
    const GraphDataset ds = testutil::random_dataset(seed, p);
    MinerConfig base_cfg;
    base_cfg.delta = delta_for_support(2, ds.size());
    base_cfg.max_edges = 4;
    const MiningResult base = mine_baseline(ds, base_cfg);
    for (double gamma : {1.0, 2.0}) {
      for (int min_cov : {1, 3}) {
        MinerConfig cfg = base_cfg;
        cfg.gamma = gamma;
        cfg.min_cov = min_cov;
        const MiningResult capped = mine(ds, cfg);
        CAPTURE(seed, gamma, min_cov);
        const auto base_codes = code_set(base);
        for (const std::string& code : code_set(capped)) {
          CHECK(base_codes.count(code) == 1);
        }
        CHECK(capped.stats.extensions_generated <= base.stats.extensions_generated);
      }
    }
  }
}

TEST_CASE("coverage never counts a graph past acceptance of patterns it lacks") {
  testutil::CorpusParams p;
  p.graph_count = 6;
  const GraphDataset ds = testutil::random_dataset(77, p);
  MinerConfig cfg;
  cfg.delta = 0.3;
  const MiningResult r = mine(ds, cfg);
  std::vector<int> recount(ds.size(), 0);
  for (const PatternRecord& rec : r.candidates) {
    for (int gid : rec.occurrence_graphs) ++recount[gid];
  }
  CHECK(recount == r.final_coverage);
}

TEST_CASE("mining is deterministic") {
  testutil::CorpusParams p;
  const GraphDataset ds = testutil::random_dataset(55, p);
  MinerConfig cfg;
  cfg.delta = 0.25;
  const MiningResult a = mine(ds, cfg);
  const MiningResult b = mine(ds, cfg);
  REQUIRE(a.candidates.size() == b.candidates.size());
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    CHECK(a.candidates[i].code == b.candidates[i].code);
  }
  CHECK(a.final_coverage == b.final_coverage);
  CHECK(a.stats.extensions_generated == b.stats.extensions_generated);
}

TEST_CASE("anti-monotone support along parent-child chains") {
  testutil::CorpusParams p;
  p.graph_count = 6;
  const GraphDataset ds = testutil::random_dataset(42, p);
  const auto roots = enumerate_single_edges(ds, testutil::full_mask(ds.size()));
  for (const PatternRecord& root : roots) {
    const auto ext = rightmost_extensions(root, testutil::full_mask(ds.size()), ds);
    for (const auto& [tuple, child] : ext) {
      CHECK(child.support() <= root.support());
    }
  }
}

TEST_CASE("empty dataset is an error; unreachable threshold is not") {
  GraphDataset empty;
  MinerConfig cfg;
  CHECK_THROWS_AS(mine(empty, cfg), Error);

  GraphDataset ds;
  ds.name = "one";
  ds.class_count = 1;
  ds.vertex_label_count = 1;
  ds.edge_label_count = 1;
  ds.graphs.push_back(make_graph(0, {0, 0}, {{0, 1, 0}}));
  ds.graphs.push_back(make_graph(1, {0}, {}));
  ds.labels = {0, 0};
  cfg.delta = 1.0;  // needs support 2; the lone edge has support 1
  cfg.gamma.reset();
  const MiningResult r = mine(ds, cfg);
  CHECK(r.candidates.empty());
}

TEST_CASE("baseline on one graph enumerates all its canonical subgraphs") {
  const LabeledGraph g = make_graph(0, {0, 0, 1}, {{0, 1, 0}, {1, 2, 0}, {2, 0, 1}});
  GraphDataset ds;
  ds.name = "solo";
  ds.class_count = 1;
  ds.vertex_label_count = 2;
  ds.edge_label_count = 2;
  ds.graphs.push_back(g);
  ds.labels = {0};
  MinerConfig cfg;
  cfg.delta = 1.0;
  cfg.max_edges = 3;
  const MiningResult r = mine_baseline(ds, cfg);
  const auto expected = oracle::brute_frequent(ds, 1, 3);
  CHECK(forms_of(r) == expected);
}

// --- coverage completion ----------------------------------------------------

TEST_CASE("already covered graphs leave the result unchanged") {
  testutil::CorpusParams p;
  p.graph_count = 4;
  p.vertex_labels = 1;
  p.edge_labels = 1;
  const GraphDataset ds = testutil::random_dataset(7, p);
  MinerConfig cfg;
  cfg.delta = delta_for_support(1, ds.size());
  cfg.min_cov = 1;
  cfg.gamma.reset();
  const MiningResult before = mine(ds, cfg);
  for (int c : before.final_coverage) REQUIRE(c >= 1);
  const MiningResult after = complete_coverage(ds, before, cfg);
  CHECK(after.candidates.size() == before.candidates.size());
  CHECK(after.filler_count() == 0);
  CHECK(after.uncoverable_graphs.empty());
}

TEST_CASE("an outlier graph gets exactly its minimal single-edge filler") {
  GraphDataset ds;
  ds.name = "outlier";
  ds.class_count = 1;
  ds.vertex_label_count = 3;
  ds.edge_label_count = 1;
  for (int i = 0; i < 3; ++i) {
    ds.graphs.push_back(make_graph(i, {0, 0}, {{0, 1, 0}}));
    ds.labels.push_back(0);
  }
  // uniquely labeled outlier: shares no edge pattern with the others
  ds.graphs.push_back(make_graph(3, {1, 2}, {{0, 1, 0}}));
  ds.labels.push_back(0);

  MinerConfig cfg;
  cfg.delta = delta_for_support(2, 4);
  cfg.min_cov = 1;
  const MiningResult mined = mine(ds, cfg);
  REQUIRE(mined.final_coverage[3] == 0);
  const MiningResult completed = complete_coverage(ds, mined, cfg);
  CHECK(completed.filler_count() == 1);
  const PatternRecord& filler = completed.candidates.back();
  CHECK(completed.filler_flags.back() == 1);
  CHECK(filler.code.to_string() == "(0,1,1,0,2)");
  CHECK(completed.final_coverage[3] == 1);
  CHECK(completed.uncoverable_graphs.empty());
}

TEST_CASE("edgeless graphs are reported uncoverable, everything else reaches min_cov") {
  testutil::CorpusParams p;
  p.graph_count = 8;
  p.edgeless_graphs = 2;
  p.min_edges = 3;
  const GraphDataset ds = testutil::random_dataset(13, p);
  MinerConfig cfg;
  cfg.delta = 0.9;  // high threshold leaves plenty uncovered
  cfg.min_cov = 3;
  const MiningResult completed = complete_coverage(ds, mine(ds, cfg), cfg);
  std::vector<int> expected_uncoverable;
  for (int i = 0; i < ds.size(); ++i) {
    if (ds.graphs[i].edge_count() == 0) {
      expected_uncoverable.push_back(i);
    } else {
      CHECK(completed.final_coverage[i] >= cfg.min_cov);
    }
  }
  CHECK(completed.uncoverable_graphs == expected_uncoverable);
}

TEST_CASE("fillers carry dataset-wide incidence") {
  testutil::CorpusParams p;
  p.graph_count = 5;
  const GraphDataset ds = testutil::random_dataset(19, p);
  MinerConfig cfg;
  cfg.delta = 0.9;
  cfg.min_cov = 2;
  const MiningResult completed = complete_coverage(ds, mine(ds, cfg), cfg);
  for (std::size_t i = 0; i < completed.candidates.size(); ++i) {
    if (!completed.filler_flags[i]) continue;
    const PatternRecord& rec = completed.candidates[i];
    for (int gid = 0; gid < ds.size(); ++gid) {
      const bool should = contains(ds.graphs[gid], rec.code);
      const bool listed = std::find(rec.occurrence_graphs.begin(), rec.occurrence_graphs.end(),
                                    gid) != rec.occurrence_graphs.end();
      CHECK(should == listed);
    }
  }
}

TEST_CASE("mining result JSON round-trips the hand-off fields") {
  testutil::CorpusParams p;
  p.graph_count = 5;
  const GraphDataset ds = testutil::random_dataset(23, p);
  MinerConfig cfg;
  cfg.delta = 0.3;
  cfg.max_edges = 3;
  const MiningResult r = complete_coverage(ds, mine(ds, cfg), cfg);
  const nlohmann::json j = mining_result_to_json(r);
  const MiningResult back = mining_result_from_json(j);
  REQUIRE(back.candidates.size() == r.candidates.size());
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    CHECK(back.candidates[i].code == r.candidates[i].code);
    CHECK(back.candidates[i].occurrence_graphs == r.candidates[i].occurrence_graphs);
    CHECK(back.filler_flags[i] == r.filler_flags[i]);
  }
  CHECK(back.final_coverage == r.final_coverage);
  CHECK(back.threshold == r.threshold);
}
