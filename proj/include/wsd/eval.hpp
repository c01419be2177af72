#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wsd/corpus.hpp"
#include "wsd/learner.hpp"

namespace wsd {

struct Prediction {
  std::vector<SenseId> predictions;
  double accuracy = 0.0;
  SenseId majority_sense;
  double majority_fraction = 0.0;
};

// Majority gold sense; ties go to the lexicographically smaller sense.
// Throws ContractError on empty input.
std::pair<SenseId, double> majority_sense(std::span<const SenseId> gold);

// Labels every context with the majority sense, so accuracy equals the
// majority fraction exactly.
Prediction baseline_predict(std::span<const SenseId> gold);

// Labels each context with the majority sense with probability k (the
// majority fraction), otherwise with a non-majority sense drawn in
// proportion to its gold count. Deterministic for a given seed.
Prediction random_predict(std::span<const SenseId> gold, std::uint64_t rng_seed);

struct Score {
  std::int64_t evaluated = 0;
  std::int64_t decided = 0;
  std::int64_t correct_decided = 0;
  std::int64_t correct_overall = 0;
  double accuracy_decided = 0.0;  // 0 when nothing was decided
  double decided_fraction = 0.0;
  double accuracy_overall_with_fallback = 0.0;
  double residual_fraction = 0.0;
};

// Evaluates over the keys of `gold`. Residual (unlabeled) contexts receive
// `fallback` for the overall accuracy. Throws GoldMismatchError for a label
// without gold. Callers remove seed contexts from both maps first.
Score score(const std::map<ContextId, SenseId>& labels, const std::map<ContextId, SenseId>& gold,
            const SenseId& fallback);

struct EvalReport {
  SenseId majority_sense;
  double majority_fraction = 0.0;
  double accuracy_decided = 0.0;
  double decided_fraction = 0.0;
  double accuracy_overall_with_fallback = 0.0;
  double residual_fraction = 0.0;
  int iterations = 0;
  bool converged = false;
  double baseline_accuracy = 0.0;
  double random_accuracy = 0.0;
  std::vector<IterationStats> per_iteration;
};

// Scores a training run against gold. Seeds (iteration 0 labels) are removed
// from the evaluated set; gold entries for ids outside `context_ids` are
// ignored.
EvalReport evaluate(const TrainResult& result, std::span<const ContextId> context_ids,
                    const std::map<ContextId, SenseId>& gold, std::uint64_t rng_seed);

struct SummaryRow {
  std::string run_id;
  std::string target;
  ConfidenceMethod method = ConfidenceMethod::restricted_ratio;
  double threshold = 0.0;
  std::int64_t min_coverage = 1;
  EvalReport report;
};

struct ReportPaths {
  std::filesystem::path stats;
  std::filesystem::path summary;
  std::filesystem::path model;
};

// Writes stats TSV, summary TSV and model file. Throws IoError.
void emit_reports(const TrainResult& result, const SenseInventory& inventory,
                  const SummaryRow& summary, const ReportPaths& paths);

}  // namespace wsd
