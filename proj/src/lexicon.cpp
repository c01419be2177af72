#include "wsd/lexicon.hpp"

#include <algorithm>
#include <unordered_set>

#include "wsd/errors.hpp"

namespace wsd {

namespace {

bool lexicon_order(const LexiconEntry& a, const LexiconEntry& b) {
  if (a.context_count != b.context_count) return a.context_count > b.context_count;
  return a.lemma < b.lemma;
}

}  // namespace

Lexicon::Lexicon(std::vector<LexiconEntry> entries, std::int64_t min_context_count)
    : entries_(std::move(entries)), min_context_count_(min_context_count) {
  if (min_context_count_ < 1) throw ContractError("min_context_count must be >= 1");
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.lemma.empty()) throw ContractError("lexicon lemma must be non-empty");
    if (e.context_count < min_context_count_)
      throw ContractError("lexicon entry '" + e.lemma + "' is below min_context_count");
    if (i > 0 && !lexicon_order(entries_[i - 1], e))
      throw ContractError("lexicon entries out of order at '" + e.lemma + "'");
    if (!index_.emplace(e.lemma, i).second)
      throw ContractError("duplicate lexicon lemma '" + e.lemma + "'");
  }
}

std::optional<std::size_t> Lexicon::index_of(std::string_view lemma) const {
  auto it = index_.find(std::string(lemma));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::int64_t ContextVector::total() const {
  std::int64_t sum = 0;
  for (const auto& [_, c] : counts) sum += c;
  return sum;
}

Lexicon build_lexicon(std::span<const Context> contexts, std::int64_t min_context_count) {
  if (min_context_count < 1) throw ContractError("min_context_count must be >= 1");
  std::unordered_map<std::string, std::int64_t> presence;
  std::unordered_set<std::string_view> seen;
  for (const auto& ctx : contexts) {
    seen.clear();
    for (const auto& lemma : ctx.lemmas)
      if (seen.insert(lemma).second) ++presence[lemma];
  }
  std::vector<LexiconEntry> entries;
  for (auto& [lemma, count] : presence)
    if (count >= min_context_count) entries.push_back(LexiconEntry{lemma, count});
  std::sort(entries.begin(), entries.end(), lexicon_order);
  return Lexicon(std::move(entries), min_context_count);
}

ContextVector vectorize(const Context& context, const Lexicon& lexicon) {
  ContextVector v;
  v.context_id = context.id;
  for (const auto& lemma : context.lemmas)
    if (auto idx = lexicon.index_of(lemma)) ++v.counts[*idx];
  return v;
}

}  // namespace wsd
