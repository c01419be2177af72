#include "wsd/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "wsd/errors.hpp"

namespace wsd {

namespace {

std::string canonical_name(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

}  // namespace

std::string_view to_string(ConfidenceMethod method) {
  switch (method) {
    case ConfidenceMethod::restricted_ratio: return "restricted_ratio";
    case ConfidenceMethod::ml: return "ml";
    case ConfidenceMethod::smoothed: return "smoothed";
    case ConfidenceMethod::log_odds: return "log_odds";
  }
  return "unknown";
}

ConfidenceMethod parse_confidence_method(std::string_view name) {
  const auto s = canonical_name(name);
  if (s == "restricted_ratio") return ConfidenceMethod::restricted_ratio;
  if (s == "ml") return ConfidenceMethod::ml;
  if (s == "smoothed") return ConfidenceMethod::smoothed;
  if (s == "log_odds") return ConfidenceMethod::log_odds;
  throw ContractError("unknown confidence method '" + std::string(name) + "'");
}

std::string_view to_string(ThresholdMode mode) {
  return mode == ThresholdMode::fixed ? "fixed" : "abney";
}

ThresholdMode parse_threshold_mode(std::string_view name) {
  if (name == "fixed") return ThresholdMode::fixed;
  if (name == "abney") return ThresholdMode::abney;
  throw ContractError("unknown threshold mode '" + std::string(name) + "'");
}

std::string_view to_string(SeedSelection selection) {
  return selection == SeedSelection::corpus_order ? "corpus_order" : "random";
}

SeedSelection parse_seed_selection(std::string_view name) {
  const auto s = canonical_name(name);
  if (s == "corpus_order") return SeedSelection::corpus_order;
  if (s == "random") return SeedSelection::random;
  throw ContractError("unknown seed selection '" + std::string(name) + "'");
}

double confidence(std::int64_t f_joint, std::int64_t f_labeled, std::int64_t f_total,
                  ConfidenceMethod method) {
  if (f_joint < 0 || f_joint > f_labeled || f_labeled > f_total)
    throw ContractError("confidence counts must satisfy 0 <= f_joint <= f_labeled <= f_total");
  const auto joint = static_cast<double>(f_joint);
  switch (method) {
    case ConfidenceMethod::restricted_ratio:
      return f_labeled == 0 ? 0.0 : joint / static_cast<double>(f_labeled);
    case ConfidenceMethod::ml:
      return f_total == 0 ? 0.0 : joint / static_cast<double>(f_total);
    case ConfidenceMethod::smoothed:
      return (joint + 1.0) / (static_cast<double>(f_total) + 2.0);
    case ConfidenceMethod::log_odds: {
      const double p = (joint + 1.0) / (static_cast<double>(f_total) + 2.0);
      return std::log(p / (1.0 - p));
    }
  }
  throw ContractError("unknown confidence method");
}

double threshold_on_method_scale(double theta, ConfidenceMethod method) {
  if (method != ConfidenceMethod::log_odds) return theta;
  if (theta >= 1.0) return std::numeric_limits<double>::infinity();
  return std::log(theta / (1.0 - theta));
}

SenseInventory::SenseInventory(std::string target, std::vector<SenseId> senses)
    : target_(std::move(target)), senses_(std::move(senses)) {
  if (senses_.size() < 2) throw ContractError("a sense inventory needs at least two senses");
  std::set<std::string_view> unique(senses_.begin(), senses_.end());
  if (unique.size() != senses_.size()) throw ContractError("sense ids must be unique");
  if (std::any_of(senses_.begin(), senses_.end(), [](const auto& s) { return s.empty(); }))
    throw ContractError("sense ids must be non-empty");
}

std::optional<std::size_t> SenseInventory::index_of(std::string_view sense) const {
  auto it = std::find(senses_.begin(), senses_.end(), sense);
  if (it == senses_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - senses_.begin());
}

bool rule_precedes(const Rule& a, const Rule& b) {
  if (a.confidence != b.confidence) return a.confidence > b.confidence;
  if (a.coverage != b.coverage) return a.coverage > b.coverage;
  if (a.evidence != b.evidence) return a.evidence < b.evidence;
  return a.sense < b.sense;
}

CountTable::CountTable(std::size_t evidences, std::size_t senses)
    : senses_(senses),
      joint_(evidences * senses, 0),
      labeled_(evidences, 0),
      total_(evidences, 0) {}

void CountTable::add(std::size_t evidence, std::optional<std::size_t> sense) {
  ++total_[evidence];
  if (sense) {
    ++labeled_[evidence];
    ++joint_[evidence * senses_ + *sense];
  }
}

void TrainerConfig::validate() const {
  if (threshold_mode == ThresholdMode::fixed && !(threshold > 0.0 && threshold <= 1.0))
    throw ContractError("fixed threshold must lie in (0, 1]");
  if (min_coverage < 1) throw ContractError("min_coverage must be >= 1");
  if (seeds_per_sense < 1) throw ContractError("seeds_per_sense must be >= 1");
  if (max_iterations < 1) throw ContractError("max_iterations must be >= 1");
}

double TrainerConfig::effective_threshold(const SenseInventory& inventory) const {
  if (threshold_mode == ThresholdMode::abney) return 1.0 / static_cast<double>(inventory.size());
  return threshold;
}

std::vector<ContextId> seed_labels(std::span<Context> contexts, const SenseInventory& inventory,
                                   const TrainerConfig& config,
                                   const std::map<ContextId, SenseId>& gold) {
  config.validate();
  std::vector<std::vector<std::size_t>> by_sense(inventory.size());
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    auto it = gold.find(contexts[i].id);
    if (it == gold.end()) continue;
    contexts[i].gold_sense = it->second;
    if (auto s = inventory.index_of(it->second)) by_sense[*s].push_back(i);
  }

  const auto need = static_cast<std::size_t>(config.seeds_per_sense);
  for (std::size_t s = 0; s < inventory.size(); ++s)
    if (by_sense[s].size() < need)
      throw SeedError("insufficient seeds for sense " + inventory.senses()[s] + " (have " +
                      std::to_string(by_sense[s].size()) + ", need " + std::to_string(need) +
                      ")");

  std::mt19937_64 rng(config.rng_seed);
  std::vector<ContextId> seeded;
  for (std::size_t s = 0; s < inventory.size(); ++s) {
    auto& pool = by_sense[s];
    if (config.seed_selection == SeedSelection::random) {
      std::shuffle(pool.begin(), pool.end(), rng);
      std::sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(need));
    }
    for (std::size_t k = 0; k < need; ++k) {
      auto& ctx = contexts[pool[k]];
      ctx.assigned_sense = inventory.senses()[s];
      ctx.assigned_at_iteration = 0;
      ctx.is_seed = true;
      seeded.push_back(ctx.id);
    }
  }
  return seeded;
}

void apply_seeds(std::span<Context> contexts, const SenseInventory& inventory,
                 std::span<const std::pair<ContextId, SenseId>> seeds) {
  std::unordered_map<ContextId, std::size_t> position;
  for (std::size_t i = 0; i < contexts.size(); ++i) position.emplace(contexts[i].id, i);
  for (const auto& [id, sense] : seeds) {
    if (!inventory.index_of(sense))
      throw SeedError("seed for context " + std::to_string(id) + " names unknown sense '" +
                      sense + "'");
    auto it = position.find(id);
    if (it == position.end())
      throw SeedError("seed names unknown context " + std::to_string(id));
    auto& ctx = contexts[it->second];
    if (ctx.assigned_sense && *ctx.assigned_sense != sense)
      throw SeedError("context " + std::to_string(id) + " seeded with two different senses");
    ctx.assigned_sense = sense;
    ctx.assigned_at_iteration = 0;
    ctx.is_seed = true;
  }
}

CountTable count_evidences(std::span<const Context> contexts, const Lexicon& lexicon,
                           const SenseInventory& inventory) {
  CountTable table(lexicon.size(), inventory.size());
  std::vector<std::size_t> present;
  for (const auto& ctx : contexts) {
    present.clear();
    for (const auto& lemma : ctx.lemmas)
      if (auto idx = lexicon.index_of(lemma)) present.push_back(*idx);
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());

    std::optional<std::size_t> sense;
    if (ctx.assigned_sense) {
      sense = inventory.index_of(*ctx.assigned_sense);
      if (!sense)
        throw ContractError("context " + std::to_string(ctx.id) + " carries unknown sense '" +
                            *ctx.assigned_sense + "'");
    }
    for (auto e : present) table.add(e, sense);
  }
  return table;
}

std::pair<DecisionList, IterationStats> build_decision_list(const CountTable& table,
                                                            const Lexicon& lexicon,
                                                            const SenseInventory& inventory,
                                                            const TrainerConfig& config,
                                                            int iteration) {
  const double theta = config.effective_threshold(inventory);
  const double cutoff = threshold_on_method_scale(theta, config.confidence_method);

  DecisionList list;
  list.method = config.confidence_method;
  list.threshold = theta;
  IterationStats stats;
  stats.iteration = iteration;

  for (std::size_t e = 0; e < table.evidences(); ++e) {
    const auto coverage = table.labeled(e);
    for (std::size_t s = 0; s < table.senses(); ++s) {
      const auto joint = table.joint(e, s);
      if (joint < 1) continue;
      ++stats.candidates;
      if (coverage < config.min_coverage) {
        ++stats.rejected_coverage;
        continue;
      }
      const double conf = confidence(joint, coverage, table.total(e), config.confidence_method);
      if (conf < cutoff) {
        ++stats.rejected_confidence;
        continue;
      }
      ++stats.accepted;
      list.rules.push_back(
          Rule{lexicon.lemma(e), inventory.senses()[s], conf, coverage, iteration});
    }
  }
  std::sort(list.rules.begin(), list.rules.end(), rule_precedes);
  return {std::move(list), stats};
}

std::int64_t apply_list(const DecisionList& list, std::span<Context> contexts, int iteration) {
  std::unordered_map<std::string_view, std::size_t> first_rank;
  for (std::size_t r = 0; r < list.rules.size(); ++r)
    first_rank.emplace(list.rules[r].evidence, r);

  std::int64_t newly = 0;
  for (auto& ctx : contexts) {
    if (ctx.labeled()) continue;
    std::size_t best = list.rules.size();
    for (const auto& lemma : ctx.lemmas) {
      auto it = first_rank.find(lemma);
      if (it != first_rank.end()) best = std::min(best, it->second);
    }
    if (best == list.rules.size()) continue;
    ctx.assigned_sense = list.rules[best].sense;
    ctx.assigned_at_iteration = iteration;
    ++newly;
  }
  return newly;
}

TrainResult train(std::vector<Context> contexts, const Lexicon& lexicon,
                  const SenseInventory& inventory, const TrainerConfig& config,
                  const IterationObserver& observer) {
  config.validate();
  const auto dataset_size = static_cast<std::int64_t>(contexts.size());
  std::int64_t labeled = std::count_if(contexts.begin(), contexts.end(),
                                       [](const Context& c) { return c.labeled(); });

  std::map<std::pair<std::string, SenseId>, int> first_accepted;
  TrainResult result;
  for (int iteration = 1; iteration <= config.max_iterations; ++iteration) {
    const auto table = count_evidences(contexts, lexicon, inventory);
    auto [list, stats] = build_decision_list(table, lexicon, inventory, config, iteration);
    for (auto& rule : list.rules)
      rule.learned_at_iteration =
          first_accepted.emplace(std::pair{rule.evidence, rule.sense}, iteration).first->second;

    stats.newly_labeled = apply_list(list, contexts, iteration);
    labeled += stats.newly_labeled;
    stats.labeled_total = labeled;
    stats.unlabeled_total = dataset_size - labeled;
    result.stats.push_back(stats);
    result.final_list = std::move(list);
    if (observer) observer(stats, contexts);
    if (stats.newly_labeled == 0) {
      result.converged = true;
      break;
    }
  }
  result.converged_at = result.stats.back().iteration;

  for (const auto& ctx : contexts)
    if (ctx.assigned_sense)
      result.labels.emplace(ctx.id, Label{*ctx.assigned_sense, ctx.assigned_at_iteration.value_or(0)});
  result.residual_fraction =
      dataset_size == 0 ? 0.0
                        : static_cast<double>(dataset_size - labeled) / static_cast<double>(dataset_size);
  return result;
}

}  // namespace wsd
