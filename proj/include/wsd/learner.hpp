#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wsd/corpus.hpp"
#include "wsd/lexicon.hpp"

namespace wsd {

// How a rule's confidence is estimated from its counts.
//   restricted_ratio  f(S,E) / f_labeled(E), 0 when nothing is labeled
//   ml                f(S,E) / f(E), 0 when f(E) = 0
//   smoothed          (f(S,E) + 1) / (f(E) + 2)
//   log_odds          log(p / (1 - p)) with p the smoothed estimate
enum class ConfidenceMethod { restricted_ratio, ml, smoothed, log_odds };

std::string_view to_string(ConfidenceMethod method);
// Accepts both `restricted_ratio` and `restricted-ratio` spellings.
ConfidenceMethod parse_confidence_method(std::string_view name);

// Throws ContractError unless 0 <= f_joint <= f_labeled <= f_total.
double confidence(std::int64_t f_joint, std::int64_t f_labeled, std::int64_t f_total,
                  ConfidenceMethod method);

// Maps a probability threshold onto the scale `method` reports on, so that
// log_odds compares against log(theta / (1 - theta)).
double threshold_on_method_scale(double theta, ConfidenceMethod method);

class SenseInventory {
 public:
  // Throws ContractError when fewer than two senses or duplicates are given.
  SenseInventory(std::string target, std::vector<SenseId> senses);

  const std::string& target() const noexcept { return target_; }
  std::span<const SenseId> senses() const noexcept { return senses_; }
  std::size_t size() const noexcept { return senses_.size(); }
  std::optional<std::size_t> index_of(std::string_view sense) const;

 private:
  std::string target_;
  std::vector<SenseId> senses_;
};

struct Rule {
  std::string evidence;
  SenseId sense;
  double confidence = 0.0;
  std::int64_t coverage = 0;
  int learned_at_iteration = 0;

  bool operator==(const Rule&) const = default;
};

// Confidence desc, coverage desc, evidence asc, sense asc.
bool rule_precedes(const Rule& a, const Rule& b);

struct DecisionList {
  std::vector<Rule> rules;
  ConfidenceMethod method = ConfidenceMethod::restricted_ratio;
  double threshold = 0.95;  // probability scale

  bool operator==(const DecisionList&) const = default;
};

// Dense counts indexed by lexicon position and sense position.
class CountTable {
 public:
  CountTable() = default;
  CountTable(std::size_t evidences, std::size_t senses);

  std::size_t evidences() const noexcept { return labeled_.size(); }
  std::size_t senses() const noexcept { return senses_; }

  std::int64_t joint(std::size_t evidence, std::size_t sense) const {
    return joint_[evidence * senses_ + sense];
  }
  std::int64_t labeled(std::size_t evidence) const { return labeled_[evidence]; }
  std::int64_t total(std::size_t evidence) const { return total_[evidence]; }

  // Records one context holding `evidence`, labeled with `sense` if given.
  void add(std::size_t evidence, std::optional<std::size_t> sense);

 private:
  std::size_t senses_ = 0;
  std::vector<std::int64_t> joint_;
  std::vector<std::int64_t> labeled_;
  std::vector<std::int64_t> total_;
};

enum class ThresholdMode { fixed, abney };
enum class SeedSelection { corpus_order, random };

std::string_view to_string(ThresholdMode mode);
ThresholdMode parse_threshold_mode(std::string_view name);
std::string_view to_string(SeedSelection selection);
SeedSelection parse_seed_selection(std::string_view name);

struct TrainerConfig {
  ConfidenceMethod confidence_method = ConfidenceMethod::restricted_ratio;
  ThresholdMode threshold_mode = ThresholdMode::fixed;
  double threshold = 0.95;
  std::int64_t min_coverage = 1;
  int seeds_per_sense = 2;
  int max_iterations = 1000;
  std::uint64_t rng_seed = 0;
  SeedSelection seed_selection = SeedSelection::corpus_order;

  void validate() const;
  // theta for fixed mode, 1/L for abney mode; probability scale.
  double effective_threshold(const SenseInventory& inventory) const;
};

struct IterationStats {
  int iteration = 0;
  std::int64_t candidates = 0;
  std::int64_t accepted = 0;
  std::int64_t rejected_confidence = 0;
  std::int64_t rejected_coverage = 0;
  std::int64_t newly_labeled = 0;
  std::int64_t labeled_total = 0;
  std::int64_t unlabeled_total = 0;

  bool operator==(const IterationStats&) const = default;
};

struct Label {
  SenseId sense;
  int iteration = 0;  // 0 for seeds

  bool operator==(const Label&) const = default;
};

struct TrainResult {
  DecisionList final_list;
  std::map<ContextId, Label> labels;
  std::vector<IterationStats> stats;
  int converged_at = 0;
  bool converged = false;
  double residual_fraction = 0.0;
};

// Marks `config.seeds_per_sense` gold contexts per sense as seeds (pseudo-word
// mode). Returns the ids seeded. Throws SeedError naming the first sense with
// too few gold contexts.
std::vector<ContextId> seed_labels(std::span<Context> contexts,
                                   const SenseInventory& inventory,
                                   const TrainerConfig& config,
                                   const std::map<ContextId, SenseId>& gold);

// Manual mode: applies externally chosen (context, sense) pairs. Throws
// SeedError on unknown contexts or senses and on conflicting duplicates.
void apply_seeds(std::span<Context> contexts, const SenseInventory& inventory,
                 std::span<const std::pair<ContextId, SenseId>> seeds);

// Presence semantics: a context counts at most once per evidence. Only
// lexicon lemmas are evidences.
CountTable count_evidences(std::span<const Context> contexts, const Lexicon& lexicon,
                           const SenseInventory& inventory);

// Candidates are all (evidence, sense) pairs with f_joint >= 1. Coverage is
// checked before confidence. Rules carry `iteration` as learned_at_iteration.
std::pair<DecisionList, IterationStats> build_decision_list(const CountTable& table,
                                                            const Lexicon& lexicon,
                                                            const SenseInventory& inventory,
                                                            const TrainerConfig& config,
                                                            int iteration);

// First-match labeling of unlabeled contexts; labeled ones are never touched.
std::int64_t apply_list(const DecisionList& list, std::span<Context> contexts, int iteration);

// Called once per iteration after labeling, with that iteration's stats and
// the current context states.
using IterationObserver =
    std::function<void(const IterationStats&, std::span<const Context>)>;

// Runs count -> build -> apply until an iteration labels nothing or
// max_iterations is reached. Seeds must already be applied.
TrainResult train(std::vector<Context> contexts, const Lexicon& lexicon,
                  const SenseInventory& inventory, const TrainerConfig& config,
                  const IterationObserver& observer = {});

}  // namespace wsd
