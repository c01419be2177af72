#include "wsd/eval.hpp"

#include <fstream>
#include <random>
#include <unordered_set>

#include "wsd/errors.hpp"
#include "wsd/formats.hpp"

namespace wsd {

std::pair<SenseId, double> majority_sense(std::span<const SenseId> gold) {
  if (gold.empty()) throw ContractError("majority sense of an empty gold set");
  std::map<SenseId, std::int64_t> counts;
  for (const auto& g : gold) ++counts[g];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it)
    if (it->second > best->second) best = it;
  return {best->first, static_cast<double>(best->second) / static_cast<double>(gold.size())};
}

namespace {

double accuracy_of(std::span<const SenseId> predictions, std::span<const SenseId> gold) {
  std::int64_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) correct += predictions[i] == gold[i];
  return static_cast<double>(correct) / static_cast<double>(gold.size());
}

}  // namespace

Prediction baseline_predict(std::span<const SenseId> gold) {
  auto [sense, fraction] = majority_sense(gold);
  Prediction p;
  p.predictions.assign(gold.size(), sense);
  p.accuracy = accuracy_of(p.predictions, gold);
  p.majority_sense = std::move(sense);
  p.majority_fraction = fraction;
  return p;
}

Prediction random_predict(std::span<const SenseId> gold, std::uint64_t rng_seed) {
  auto [sense, fraction] = majority_sense(gold);

  std::map<SenseId, std::int64_t> others;
  for (const auto& g : gold)
    if (g != sense) ++others[g];
  std::vector<SenseId> other_ids;
  std::vector<double> other_weights;
  for (const auto& [id, count] : others) {
    other_ids.push_back(id);
    other_weights.push_back(static_cast<double>(count));
  }

  std::mt19937_64 rng(rng_seed);
  std::bernoulli_distribution pick_majority(fraction);
  std::discrete_distribution<std::size_t> pick_other(other_weights.begin(), other_weights.end());

  Prediction p;
  p.predictions.reserve(gold.size());
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (other_ids.empty() || pick_majority(rng))
      p.predictions.push_back(sense);
    else
      p.predictions.push_back(other_ids[pick_other(rng)]);
  }
  p.accuracy = accuracy_of(p.predictions, gold);
  p.majority_sense = std::move(sense);
  p.majority_fraction = fraction;
  return p;
}

Score score(const std::map<ContextId, SenseId>& labels, const std::map<ContextId, SenseId>& gold,
            const SenseId& fallback) {
  for (const auto& [id, _] : labels)
    if (!gold.contains(id))
      throw GoldMismatchError("context " + std::to_string(id) + " is labeled but has no gold sense");

  Score s;
  s.evaluated = static_cast<std::int64_t>(gold.size());
  for (const auto& [id, truth] : gold) {
    auto it = labels.find(id);
    if (it != labels.end()) {
      ++s.decided;
      if (it->second == truth) {
        ++s.correct_decided;
        ++s.correct_overall;
      }
    } else if (fallback == truth) {
      ++s.correct_overall;
    }
  }
  if (s.evaluated > 0) {
    const auto n = static_cast<double>(s.evaluated);
    s.decided_fraction = static_cast<double>(s.decided) / n;
    s.residual_fraction = static_cast<double>(s.evaluated - s.decided) / n;
    s.accuracy_overall_with_fallback = static_cast<double>(s.correct_overall) / n;
  }
  if (s.decided > 0)
    s.accuracy_decided = static_cast<double>(s.correct_decided) / static_cast<double>(s.decided);
  return s;
}

EvalReport evaluate(const TrainResult& result, std::span<const ContextId> context_ids,
                    const std::map<ContextId, SenseId>& gold, std::uint64_t rng_seed) {
  std::map<ContextId, SenseId> eval_gold;
  for (auto id : context_ids) {
    auto label = result.labels.find(id);
    if (label != result.labels.end() && label->second.iteration == 0) continue;  // seed
    auto g = gold.find(id);
    if (g != gold.end()) eval_gold.emplace(id, g->second);
  }
  if (eval_gold.empty()) throw GoldMismatchError("no non-seed context has a gold sense");

  std::map<ContextId, SenseId> labels;
  for (const auto& [id, label] : result.labels)
    if (label.iteration > 0) labels.emplace(id, label.sense);

  std::vector<SenseId> gold_seq;
  gold_seq.reserve(eval_gold.size());
  for (const auto& [_, sense] : eval_gold) gold_seq.push_back(sense);
  const auto baseline = baseline_predict(gold_seq);
  const auto random = random_predict(gold_seq, rng_seed);
  const auto s = score(labels, eval_gold, baseline.majority_sense);

  EvalReport report;
  report.majority_sense = baseline.majority_sense;
  report.majority_fraction = baseline.majority_fraction;
  report.accuracy_decided = s.accuracy_decided;
  report.decided_fraction = s.decided_fraction;
  report.accuracy_overall_with_fallback = s.accuracy_overall_with_fallback;
  report.residual_fraction = s.residual_fraction;
  report.iterations = result.converged_at;
  report.converged = result.converged;
  report.baseline_accuracy = baseline.accuracy;
  report.random_accuracy = random.accuracy;
  report.per_iteration = result.stats;
  return report;
}

void emit_reports(const TrainResult& result, const SenseInventory& inventory,
                  const SummaryRow& summary, const ReportPaths& paths) {
  {
    auto out = open_output(paths.stats);
    write_stats(out, result.stats);
    check_written(out, paths.stats);
  }
  {
    auto out = open_output(paths.summary);
    write_summary(out, {summary});
    check_written(out, paths.summary);
  }
  {
    auto out = open_output(paths.model);
    write_model(out, inventory, result.final_list);
    check_written(out, paths.model);
  }
}

}  // namespace wsd
