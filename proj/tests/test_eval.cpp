#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "wsd/errors.hpp"
#include "wsd/eval.hpp"
#include "wsd/formats.hpp"

using namespace wsd;

TEST_CASE("baseline predicts the majority sense") {
  std::vector<SenseId> gold{"A", "A", "B"};
  auto p = baseline_predict(gold);
  CHECK(p.predictions == std::vector<SenseId>{"A", "A", "A"});
  CHECK(p.accuracy == 2.0 / 3.0);
  std::vector<SenseId> all_a{"A", "A"};
  CHECK(baseline_predict(all_a).accuracy == 1.0);
  CHECK_THROWS_AS(baseline_predict({}), ContractError);
}

TEST_CASE("baseline accuracy equals the majority fraction exactly") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 500);
    std::vector<SenseId> gold;
    std::int64_t a = 0;
    for (int i = 0; i < n; ++i) {
      bool is_a = rng() % 100 < 60;
      a += is_a;
      gold.push_back(is_a ? "A" : "B");
    }
    const auto majority = std::max(a, n - a);
    CHECK(baseline_predict(gold).accuracy == static_cast<double>(majority) / n);
  }
}

TEST_CASE("random comparator") {
  std::vector<SenseId> all_a(50, "A");
  auto p = random_predict(all_a, 3);
  CHECK(p.accuracy == 1.0);

  std::vector<SenseId> half;
  for (int i = 0; i < 100000; ++i) half.push_back(i % 2 ? "A" : "B");
  auto r = random_predict(half, 3);
  CHECK(std::abs(r.accuracy - 0.5) < 0.01);
  CHECK(random_predict(half, 3).predictions == r.predictions);
  CHECK_THROWS_AS(random_predict({}, 1), ContractError);
}

TEST_CASE("score arithmetic") {
  std::map<ContextId, SenseId> labels{{1, "A"}};
  std::map<ContextId, SenseId> gold{{1, "A"}, {2, "B"}};
  auto s = score(labels, gold, "A");
  CHECK(s.accuracy_decided == 1.0);
  CHECK(s.decided_fraction == 0.5);
  CHECK(s.accuracy_overall_with_fallback == 0.5);
  CHECK(s.residual_fraction == 0.5);

  std::map<ContextId, SenseId> gold3{{1, "A"}, {2, "A"}, {3, "B"}};
  CHECK(score({}, gold3, "A").accuracy_overall_with_fallback == 2.0 / 3.0);

  std::map<ContextId, SenseId> stray{{9, "A"}};
  CHECK_THROWS_AS(score(stray, gold, "A"), GoldMismatchError);
}

TEST_CASE("score invariants on random label sets") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<ContextId, SenseId> gold, labels;
    std::vector<std::pair<ContextId, SenseId>> order;
    for (int i = 0; i < 40; ++i) {
      gold[i] = rng() % 2 ? "A" : "B";
      if (rng() % 3) labels[i] = rng() % 2 ? "A" : "B";
    }
    auto s = score(labels, gold, "A");
    CHECK(s.decided_fraction + s.residual_fraction == doctest::Approx(1.0));
    CHECK(s.accuracy_overall_with_fallback >= s.decided_fraction * s.accuracy_decided - 1e-12);
    for (double f : {s.accuracy_decided, s.decided_fraction, s.accuracy_overall_with_fallback})
      CHECK((f >= 0.0 && f <= 1.0));
  }
}

TEST_CASE("evaluate excludes seeds and uses gold majority as fallback") {
  TrainResult r;
  r.labels = {{0, {"A", 0}}, {1, {"B", 0}}, {2, {"A", 1}}, {3, {"B", 1}}};
  r.stats = {IterationStats{1, 4, 2, 2, 0, 2, 4, 2}, IterationStats{2, 4, 2, 2, 0, 0, 4, 2}};
  r.converged_at = 2;
  r.converged = true;
  std::map<ContextId, SenseId> gold{{0, "A"}, {1, "B"}, {2, "A"}, {3, "A"}, {4, "A"}, {5, "B"}};
  std::vector<ContextId> ids{0, 1, 2, 3, 4, 5};
  auto rep = evaluate(r, ids, gold, 1);
  // evaluated: 2,3,4,5 -> majority A (3/4)
  CHECK(rep.majority_sense == "A");
  CHECK(rep.baseline_accuracy == 0.75);
  CHECK(rep.decided_fraction == 0.5);
  CHECK(rep.accuracy_decided == 0.5);
  CHECK(rep.accuracy_overall_with_fallback == 0.5);  // 2 right, 3 wrong, 4 fallback right, 5 wrong
  CHECK(rep.iterations == 2);
}

TEST_CASE("emit_reports writes stats, summary and model") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "wsd_test_eval_reports";
  fs::remove_all(dir);
  fs::create_directories(dir);
  TrainResult r;
  r.final_list.rules = {Rule{"planeta", "B", 1.0, 3, 1}};
  SenseInventory inv("tierra", {"A", "B"});
  SummaryRow row;
  row.run_id = "r1";
  row.target = "tierra";
  row.threshold = 0.95;
  row.report.converged = false;
  ReportPaths paths{dir / "stats.tsv", dir / "summary.tsv", dir / "model.tsv"};
  emit_reports(r, inv, row, paths);

  std::ifstream stats(paths.stats);
  std::string header, extra;
  std::getline(stats, header);
  CHECK(header.starts_with("iteration\tcandidates"));
  CHECK_FALSE(std::getline(stats, extra));

  std::ifstream summary(paths.summary);
  std::string h, line;
  std::getline(summary, h);
  std::getline(summary, line);
  CHECK(h.starts_with("run_id\ttarget\tmethod"));
  CHECK(split(line, '\t').size() == 13);
  CHECK(split(line, '\t')[6] == "false");

  ReportPaths bad{dir / "missing" / "s.tsv", dir / "x.tsv", dir / "m.tsv"};
  CHECK_THROWS_AS(emit_reports(r, inv, row, bad), IoError);
  fs::remove_all(dir);
}
