#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "synthetic.hpp"
#include "wsd/errors.hpp"
#include "wsd/formats.hpp"
#include "wsd/learner.hpp"

using namespace wsd;

namespace {

Context ctx(ContextId id, std::vector<std::string> lemmas,
            std::optional<SenseId> label = std::nullopt) {
  Context c;
  c.id = id;
  c.target_lemma = "tierra";
  c.lemmas = std::move(lemmas);
  if (label) {
    c.assigned_sense = label;
    c.assigned_at_iteration = 0;
    c.is_seed = true;
  }
  return c;
}

const SenseInventory kInventory("tierra", {"A", "B"});

}  // namespace

TEST_CASE("confidence formulas") {
  using M = ConfidenceMethod;
  CHECK(confidence(3, 4, 10, M::restricted_ratio) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(confidence(0, 0, 0, M::restricted_ratio) == 0.0);
  CHECK(confidence(0, 0, 0, M::smoothed) == 0.5);
  CHECK(confidence(3, 4, 4, M::smoothed) == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
  CHECK(confidence(4, 4, 4, M::smoothed) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(confidence(3, 4, 10, M::ml) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(confidence(0, 0, 0, M::ml) == 0.0);
  CHECK(confidence(3, 4, 4, M::log_odds) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(confidence(0, 0, 0, M::log_odds) == 0.0);
  CHECK_THROWS_AS(confidence(5, 4, 10, M::smoothed), ContractError);
  CHECK_THROWS_AS(confidence(1, 4, 3, M::smoothed), ContractError);
  CHECK_THROWS_AS(confidence(-1, 0, 0, M::smoothed), ContractError);
}

TEST_CASE("method names parse in both spellings") {
  CHECK(parse_confidence_method("restricted-ratio") == ConfidenceMethod::restricted_ratio);
  CHECK(parse_confidence_method("log_odds") == ConfidenceMethod::log_odds);
  CHECK(parse_confidence_method(to_string(ConfidenceMethod::smoothed)) == ConfidenceMethod::smoothed);
  CHECK_THROWS_AS(parse_confidence_method("loglik"), ContractError);
  CHECK(parse_seed_selection("corpus-order") == SeedSelection::corpus_order);
  CHECK(parse_threshold_mode("abney") == ThresholdMode::abney);
}

TEST_CASE("log-odds and smoothed estimates rank identically") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_int_distribution<int> n_rules(2, 40);
    std::uniform_int_distribution<std::int64_t> count(0, 60);
    std::vector<Rule> smoothed, log_odds;
    const int n = n_rules(rng);
    for (int i = 0; i < n; ++i) {
      auto a = count(rng), b = count(rng), c = count(rng);
      std::int64_t v[3] = {a, b, c};
      std::sort(v, v + 3);
      const auto ev = "e" + std::to_string(i);
      smoothed.push_back(Rule{ev, "A", confidence(v[0], v[1], v[2], ConfidenceMethod::smoothed), v[1], 1});
      log_odds.push_back(Rule{ev, "A", confidence(v[0], v[1], v[2], ConfidenceMethod::log_odds), v[1], 1});
    }
    std::sort(smoothed.begin(), smoothed.end(), rule_precedes);
    std::sort(log_odds.begin(), log_odds.end(), rule_precedes);
    for (std::size_t i = 0; i < smoothed.size(); ++i)
      REQUIRE(smoothed[i].evidence == log_odds[i].evidence);
  }
}

TEST_CASE("sense inventory validation") {
  CHECK_THROWS_AS(SenseInventory("t", {"A"}), ContractError);
  CHECK_THROWS_AS(SenseInventory("t", {"A", "A"}), ContractError);
  CHECK(kInventory.index_of("B") == 1u);
}

TEST_CASE("count_evidences uses presence, not multiplicity") {
  Lexicon lex({{"planeta", 6}, {"agua", 1}}, 1);
  std::vector<Context> cs{ctx(0, {"planeta"}, "A"),          ctx(1, {"planeta", "planeta"}, "A"),
                          ctx(2, {"planeta", "agua"}, "A"),  ctx(3, {"planeta"}, "B"),
                          ctx(4, {"planeta"}),               ctx(5, {"planeta"}),
                          ctx(6, {"fuera"}, "B")};
  auto t = count_evidences(cs, lex, kInventory);
  CHECK(t.joint(0, 0) == 3);
  CHECK(t.joint(0, 1) == 1);
  CHECK(t.labeled(0) == 4);
  CHECK(t.total(0) == 6);
  CHECK(t.labeled(1) == 1);

  std::vector<Context> unlabeled{ctx(0, {"agua"})};
  auto u = count_evidences(unlabeled, lex, kInventory);
  CHECK(u.labeled(1) == 0);
  CHECK(u.total(1) == 1);
}

TEST_CASE("build_decision_list acceptance and rejection causes") {
  Lexicon lex({{"a", 3}, {"b", 3}, {"c", 3}}, 1);
  CountTable t(3, 2);
  t.add(0, 0u);  // a: 2 x A
  t.add(0, 0u);
  t.add(1, 0u);  // b: 3 x A, 1 x B
  t.add(1, 0u);
  t.add(1, 0u);
  t.add(1, 1u);
  t.add(2, 1u);  // c: 1 x B
  TrainerConfig cfg;

  auto [list, stats] = build_decision_list(t, lex, kInventory, cfg, 1);
  CHECK(stats.candidates == 4);
  CHECK(stats.accepted == 2);
  CHECK(stats.rejected_confidence == 2);
  CHECK(stats.rejected_coverage == 0);
  REQUIRE(list.rules.size() == 2);
  CHECK(list.rules[0] == Rule{"a", "A", 1.0, 2, 1});
  CHECK(list.rules[1] == Rule{"c", "B", 1.0, 1, 1});

  cfg.min_coverage = 2;
  auto [strict, strict_stats] = build_decision_list(t, lex, kInventory, cfg, 1);
  CHECK(strict_stats.rejected_coverage == 1);
  CHECK(strict_stats.accepted == 1);
  CHECK(strict_stats.accepted + strict_stats.rejected_confidence + strict_stats.rejected_coverage ==
        strict_stats.candidates);
}

TEST_CASE("coverage is checked before confidence") {
  Lexicon lex({{"a", 2}}, 1);
  CountTable t(1, 2);
  t.add(0, 0u);
  TrainerConfig cfg;
  cfg.min_coverage = 2;
  cfg.threshold = 1.0;
  auto [list, stats] = build_decision_list(t, lex, kInventory, cfg, 1);
  CHECK(list.rules.empty());
  CHECK(stats.rejected_coverage == 1);
  CHECK(stats.rejected_confidence == 0);
}

TEST_CASE("abney threshold is 1/L and log-odds uses a transformed cutoff") {
  TrainerConfig cfg;
  cfg.threshold_mode = ThresholdMode::abney;
  CHECK(cfg.effective_threshold(kInventory) == 0.5);
  CHECK(cfg.effective_threshold(SenseInventory("t", {"a", "b", "c"})) == 1.0 / 3.0);
  CHECK(threshold_on_method_scale(0.95, ConfidenceMethod::log_odds) ==
        doctest::Approx(std::log(19.0)));
  CHECK(threshold_on_method_scale(0.95, ConfidenceMethod::smoothed) == 0.95);

  // 2/4 passes at 1/L = 0.5 for both senses
  Lexicon lex({{"a", 4}}, 1);
  CountTable t(1, 2);
  t.add(0, 0u);
  t.add(0, 0u);
  t.add(0, 1u);
  t.add(0, 1u);
  auto [list, stats] = build_decision_list(t, lex, kInventory, cfg, 1);
  CHECK(stats.accepted == 2);
  CHECK(list.rules[0].sense == "A");
}

TEST_CASE("log-odds and smoothed accept the same rules") {
  Lexicon lex({{"a", 9}, {"b", 9}}, 1);
  CountTable t(2, 2);
  for (int i = 0; i < 40; ++i) t.add(0, 0u);
  t.add(0, std::nullopt);
  for (int i = 0; i < 5; ++i) t.add(1, 0u);
  TrainerConfig s, l;
  s.confidence_method = ConfidenceMethod::smoothed;
  l.confidence_method = ConfidenceMethod::log_odds;
  auto [ls, ss] = build_decision_list(t, lex, kInventory, s, 1);
  auto [ll, sl] = build_decision_list(t, lex, kInventory, l, 1);
  CHECK(ss.accepted == 1);  // 41/43 >= 0.95, 6/7 < 0.95
  CHECK(sl.accepted == ss.accepted);
  CHECK(ll.rules[0].evidence == ls.rules[0].evidence);
}

TEST_CASE("apply_list: first match, labels immutable, no match stays unlabeled") {
  DecisionList list;
  list.rules = {Rule{"planeta", "A", 1.0, 2, 1}, Rule{"agua", "B", 0.96, 3, 1}};
  std::vector<Context> cs{ctx(0, {"agua", "planeta"}), ctx(1, {"planeta"}, "B"), ctx(2, {"nada"}),
                          ctx(3, {"agua"})};
  CHECK(apply_list(list, cs, 4) == 2);
  CHECK(cs[0].assigned_sense == "A");
  CHECK(cs[0].assigned_at_iteration == 4);
  CHECK(cs[1].assigned_sense == "B");
  CHECK(cs[1].assigned_at_iteration == 0);
  CHECK_FALSE(cs[2].assigned_sense);
  CHECK(cs[3].assigned_sense == "B");
}

TEST_CASE("seed_labels picks gold contexts per sense") {
  std::vector<Context> cs;
  std::map<ContextId, SenseId> gold;
  for (int i = 0; i < 10; ++i) {
    cs.push_back(ctx(i * 3, {"x"}));
    gold[i * 3] = i % 3 == 0 ? "B" : "A";
  }
  TrainerConfig cfg;
  auto seeded = seed_labels(cs, kInventory, cfg, gold);
  CHECK(seeded == std::vector<ContextId>{3, 6, 0, 9});
  for (const auto& c : cs) {
    if (!c.is_seed) continue;
    CHECK(c.assigned_at_iteration == 0);
    CHECK(c.assigned_sense == gold[c.id]);
  }

  auto again = cs;
  for (auto& c : again) c = ctx(c.id, c.lemmas);
  cfg.seed_selection = SeedSelection::random;
  cfg.rng_seed = 17;
  auto r1 = seed_labels(again, kInventory, cfg, gold);
  for (auto& c : again) c = ctx(c.id, c.lemmas);
  auto r2 = seed_labels(again, kInventory, cfg, gold);
  CHECK(r1 == r2);
  CHECK(r1.size() == 4);
}

TEST_CASE("seed_labels reports the sense lacking gold contexts") {
  std::vector<Context> cs{ctx(0, {"x"}), ctx(1, {"x"}), ctx(2, {"x"})};
  std::map<ContextId, SenseId> gold{{0, "A"}, {1, "A"}, {2, "B"}};
  try {
    seed_labels(cs, kInventory, TrainerConfig{}, gold);
    FAIL("expected SeedError");
  } catch (const SeedError& e) {
    CHECK(std::string(e.what()).find("insufficient seeds for sense B") != std::string::npos);
  }
}

TEST_CASE("manual seeds pass through and are validated") {
  std::vector<Context> cs{ctx(0, {"x"}), ctx(1, {"y"}), ctx(2, {"z"}), ctx(3, {"w"})};
  std::vector<std::pair<ContextId, SenseId>> seeds{{0, "A"}, {1, "A"}, {2, "B"}, {3, "B"}};
  apply_seeds(cs, kInventory, seeds);
  for (const auto& c : cs) CHECK(c.is_seed);
  std::vector<std::pair<ContextId, SenseId>> bad_id{{9, "A"}};
  CHECK_THROWS_AS(apply_seeds(cs, kInventory, bad_id), SeedError);
  std::vector<std::pair<ContextId, SenseId>> bad_sense{{0, "C"}};
  CHECK_THROWS_AS(apply_seeds(cs, kInventory, bad_sense), SeedError);
  std::vector<std::pair<ContextId, SenseId>> conflict{{0, "B"}};
  CHECK_THROWS_AS(apply_seeds(cs, kInventory, conflict), SeedError);
}

TEST_CASE("train on a planted corpus recovers the senses") {
  auto pc = testing::make_planted_corpus(42);
  // every context carries an indicator of its own sense
  for (const auto& c : pc.contexts) {
    const std::size_t s = *c.gold_sense == "alpha" ? 0 : 1;
    bool has = false;
    for (const auto& l : c.lemmas)
      has |= std::find(pc.indicators[s].begin(), pc.indicators[s].end(), l) != pc.indicators[s].end();
    CHECK(has);
  }
  SenseInventory inv("target", pc.senses);
  auto lex = build_lexicon(pc.contexts, 10);
  TrainerConfig cfg;
  seed_labels(pc.contexts, inv, cfg, pc.gold);
  auto result = train(pc.contexts, lex, inv, cfg);
  CHECK(result.converged);
  CHECK(result.residual_fraction == 0.0);
  std::int64_t wrong = 0;
  for (const auto& [id, label] : result.labels) wrong += label.sense != pc.gold.at(id);
  CHECK(wrong <= 10);
}

TEST_CASE("train converges immediately when seeds share every lemma") {
  std::vector<Context> cs;
  for (int i = 0; i < 4; ++i) cs.push_back(ctx(i, {"x", "y", "z"}, i < 2 ? "A" : "B"));
  for (int i = 4; i < 20; ++i) cs.push_back(ctx(i, {"x", "y"}));
  auto lex = build_lexicon(cs, 1);
  auto result = train(cs, lex, kInventory, TrainerConfig{});
  CHECK(result.converged);
  CHECK(result.converged_at == 1);
  REQUIRE(result.stats.size() == 1);
  CHECK(result.stats[0].newly_labeled == 0);
  CHECK(result.stats[0].accepted == 0);
  CHECK(result.residual_fraction == doctest::Approx(1.0 - 4.0 / 20.0));
}

TEST_CASE("train flags a run cut off by max_iterations") {
  auto pc = testing::make_planted_corpus(7);
  SenseInventory inv("target", pc.senses);
  TrainerConfig cfg;
  cfg.max_iterations = 1;
  seed_labels(pc.contexts, inv, cfg, pc.gold);
  auto result = train(pc.contexts, build_lexicon(pc.contexts, 10), inv, cfg);
  CHECK_FALSE(result.converged);
  CHECK(result.converged_at == 1);
}

TEST_CASE("training output is deterministic") {
  auto run = [] {
    auto pc = testing::make_planted_corpus(99);
    SenseInventory inv("target", pc.senses);
    TrainerConfig cfg;
    cfg.seed_selection = SeedSelection::random;
    cfg.rng_seed = 5;
    seed_labels(pc.contexts, inv, cfg, pc.gold);
    auto r = train(pc.contexts, build_lexicon(pc.contexts, 10), inv, cfg);
    std::ostringstream out;
    write_model(out, inv, r.final_list);
    write_stats(out, r.stats);
    write_labels(out, r.labels);
    return out.str();
  };
  CHECK(run() == run());
}

TEST_CASE("stats balance and monotone labeling on random corpora") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Context> cs;
    for (int i = 0; i < 80; ++i) {
      std::vector<std::string> lemmas;
      for (int j = 0; j < 5; ++j) lemmas.push_back("w" + std::to_string(rng() % 25));
      cs.push_back(ctx(i, lemmas, i < 4 ? std::optional<SenseId>(i % 2 ? "A" : "B") : std::nullopt));
    }
    TrainerConfig cfg;
    cfg.threshold = trial % 2 ? 0.95 : 0.6;
    std::map<ContextId, SenseId> previous;
    std::int64_t last_total = 4;
    auto observer = [&](const IterationStats& s, std::span<const Context> state) {
      CHECK(s.accepted + s.rejected_confidence + s.rejected_coverage == s.candidates);
      CHECK(s.labeled_total + s.unlabeled_total == 80);
      CHECK(s.labeled_total >= last_total);
      last_total = s.labeled_total;
      for (const auto& c : state) {
        auto it = previous.find(c.id);
        if (it != previous.end()) CHECK(c.assigned_sense == it->second);
        if (c.assigned_sense) previous[c.id] = *c.assigned_sense;
      }
    };
    auto r = train(cs, build_lexicon(cs, 1), kInventory, cfg, observer);
    CHECK(r.converged);
    CHECK(static_cast<std::int64_t>(r.stats.size()) <= 81);
  }
}
