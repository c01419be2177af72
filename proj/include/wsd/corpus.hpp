#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wsd {

using SenseId = std::string;
using ContextId = std::int64_t;

// POS code given to tokens produced by the raw-text tokenizer.
inline constexpr std::string_view kRawPos = "RAW";

struct Token {
  std::string surface;
  std::string lemma;
  std::string pos;

  bool operator==(const Token&) const = default;
};

using Sentence = std::vector<Token>;

struct Document {
  std::int64_t id = 0;
  std::vector<Sentence> sentences;

  bool operator==(const Document&) const = default;
};

// One sentence containing the target. `id` is the global sentence ordinal
// of that sentence in the corpus it was extracted from, so gold and seed
// files written against the same corpus line up with it.
struct Context {
  ContextId id = 0;
  std::int64_t document_id = 0;
  std::string target_lemma;
  std::vector<std::string> lemmas;  // multiset, target excluded
  std::optional<SenseId> gold_sense;
  std::optional<SenseId> assigned_sense;
  std::optional<int> assigned_at_iteration;
  bool is_seed = false;

  bool labeled() const noexcept { return assigned_sense.has_value(); }
};

struct PseudoWordSpec {
  std::string word_a;
  std::string word_b;
  std::string pseudo;

  // Checks the pairwise-distinct requirement; throws ContractError.
  void validate() const;
};

inline const std::vector<std::string>& default_content_prefixes() {
  static const std::vector<std::string> prefixes{"N", "VM", "AQ"};
  return prefixes;
}

// Lowercases (ASCII and Latin-1 letters) and strips ASCII punctuation from
// both ends. Returns an empty string when nothing survives.
std::string normalize_raw_token(std::string_view token);

// One Document (with a single sentence) per line holding at least
// `min_line_words` whitespace-separated tokens.
std::vector<Document> parse_raw_corpus(std::istream& in,
                                       std::size_t min_line_words = 10);

// Vertical format: `surface<TAB>lemma<TAB>pos` per line, blank line ends a
// sentence, a line reading exactly `<doc>` starts a new document.
std::vector<Document> parse_tagged_corpus(std::istream& in);

void write_tagged_corpus(std::ostream& out, std::span<const Document> docs);

// Keeps tokens whose POS starts with one of `prefixes`; raw tokens always
// pass. Sentences are kept even when they end up empty so sentence
// ordinals stay stable.
Document filter_content_words(
    const Document& doc,
    std::span<const std::string> prefixes = default_content_prefixes());

std::int64_t count_sentences(std::span<const Document> docs);

std::vector<Context> extract_contexts(std::span<const Document> docs,
                                      std::string_view target);

struct PseudoWordCorpus {
  std::vector<Document> docs;
  // global sentence ordinal -> replaced lemma
  std::map<ContextId, std::string> gold;
  // sentences holding both source words; absent from `gold`
  std::vector<ContextId> ambiguous;
};

// Throws ContractError when the settings are invalid or the pseudo lemma already
// occurs in the corpus.
PseudoWordCorpus make_pseudoword_corpus(std::span<const Document> docs,
                                        const PseudoWordSpec& spec);

}  // namespace wsd
