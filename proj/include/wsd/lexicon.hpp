#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wsd/corpus.hpp"

namespace wsd {

struct LexiconEntry {
  std::string lemma;
  std::int64_t context_count = 0;

  bool operator==(const LexiconEntry&) const = default;
};

// Frequency-ordered lemma inventory. Entries are sorted by context_count
// descending, then lemma ascending (byte order, which for UTF-8 is code
// point order).
class Lexicon {
 public:
  Lexicon() = default;
  // Throws ContractError when `entries` break the ordering, uniqueness or
  // lower-bound invariants.
  Lexicon(std::vector<LexiconEntry> entries, std::int64_t min_context_count);

  std::span<const LexiconEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  std::int64_t min_context_count() const noexcept { return min_context_count_; }
  const std::string& lemma(std::size_t index) const { return entries_.at(index).lemma; }
  std::optional<std::size_t> index_of(std::string_view lemma) const;

 private:
  std::vector<LexiconEntry> entries_;
  std::int64_t min_context_count_ = 1;
  std::unordered_map<std::string, std::size_t> index_;
};

// Sparse per-occurrence counts keyed by lexicon position.
struct ContextVector {
  ContextId context_id = 0;
  std::map<std::size_t, std::int64_t> counts;

  std::int64_t total() const;
};

// context_count(L) = number of contexts whose multiset contains L at least
// once; lemmas below `min_context_count` are dropped.
Lexicon build_lexicon(std::span<const Context> contexts, std::int64_t min_context_count);

ContextVector vectorize(const Context& context, const Lexicon& lexicon);

}  // namespace wsd
