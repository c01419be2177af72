#include "wsd/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "wsd/errors.hpp"

namespace wsd {

namespace {

bool is_ascii_punct(unsigned char c) {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) ||
         (c >= 0x5B && c <= 0x60) || (c >= 0x7B && c <= 0x7E);
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto c = static_cast<unsigned char>(out[i]);
    if (c >= 'A' && c <= 'Z') {
      out[i] = static_cast<char>(c + 32);
    } else if (c == 0xC3 && i + 1 < out.size()) {
      // U+00C0..U+00DE map to U+00E0..U+00FE, except U+00D7 (multiplication sign).
      auto next = static_cast<unsigned char>(out[i + 1]);
      if (next >= 0x80 && next <= 0x9E && next != 0x97)
        out[i + 1] = static_cast<char>(next + 0x20);
      ++i;
    }
  }
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
  });
}

}  // namespace

void PseudoWordSpec::validate() const {
  if (word_a.empty() || word_b.empty() || pseudo.empty())
    throw ContractError("pseudo-word settings: words must be non-empty");
  if (word_a == word_b)
    throw ContractError("pseudo-word settings: the two source words must differ");
  if (pseudo == word_a || pseudo == word_b)
    throw ContractError("pseudo-word settings: pseudo lemma must differ from both source words");
}

std::string normalize_raw_token(std::string_view token) {
  std::size_t begin = 0;
  std::size_t end = token.size();
  while (begin < end && is_ascii_punct(static_cast<unsigned char>(token[begin]))) ++begin;
  while (end > begin && is_ascii_punct(static_cast<unsigned char>(token[end - 1]))) --end;
  return lowercase(token.substr(begin, end - begin));
}

std::vector<Document> parse_raw_corpus(std::istream& in, std::size_t min_line_words) {
  if (min_line_words < 1) throw ContractError("min_line_words must be >= 1");
  std::vector<Document> docs;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::vector<std::string> raw;
    for (std::string w; words >> w;) raw.push_back(std::move(w));
    if (raw.size() < min_line_words) continue;

    Sentence sentence;
    sentence.reserve(raw.size());
    for (const auto& w : raw) {
      std::string norm = normalize_raw_token(w);
      if (norm.empty()) continue;
      sentence.push_back(Token{norm, norm, std::string(kRawPos)});
    }
    if (sentence.empty()) continue;  // nothing but punctuation
    Document doc;
    doc.id = static_cast<std::int64_t>(docs.size());
    doc.sentences.push_back(std::move(sentence));
    docs.push_back(std::move(doc));
  }
  if (in.bad()) throw IoError("error while reading raw corpus");
  return docs;
}

std::vector<Document> parse_tagged_corpus(std::istream& in) {
  std::vector<Document> docs;
  Sentence current;
  bool open_doc = false;

  auto flush_sentence = [&] {
    if (current.empty()) return;
    if (!open_doc) {
      docs.push_back(Document{static_cast<std::int64_t>(docs.size()), {}});
      open_doc = true;
    }
    docs.back().sentences.push_back(std::move(current));
    current.clear();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (is_blank(line)) {
      flush_sentence();
      continue;
    }
    if (line == "<doc>") {
      flush_sentence();
      docs.push_back(Document{static_cast<std::int64_t>(docs.size()), {}});
      open_doc = true;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      auto tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (fields.size() != 3)
      throw ParseError("expected 3 tab-separated columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    if (fields[1].empty()) throw ParseError("empty lemma", line_no);
    current.push_back(Token{std::move(fields[0]), std::move(fields[1]), std::move(fields[2])});
  }
  if (in.bad()) throw IoError("error while reading tagged corpus");
  flush_sentence();
  return docs;
}

void write_tagged_corpus(std::ostream& out, std::span<const Document> docs) {
  for (const auto& doc : docs) {
    out << "<doc>\n";
    for (const auto& sentence : doc.sentences) {
      // A blank line would vanish on re-read and shift later ordinals.
      if (sentence.empty()) throw ContractError("empty sentence has no vertical representation");
      for (const auto& t : sentence) out << t.surface << '\t' << t.lemma << '\t' << t.pos << '\n';
      out << '\n';
    }
  }
}

Document filter_content_words(const Document& doc, std::span<const std::string> prefixes) {
  if (prefixes.empty()) throw ContractError("content-word filter needs at least one tag prefix");
  Document out;
  out.id = doc.id;
  out.sentences.reserve(doc.sentences.size());
  for (const auto& sentence : doc.sentences) {
    Sentence kept;
    for (const auto& t : sentence) {
      bool pass = t.pos == kRawPos ||
                  std::any_of(prefixes.begin(), prefixes.end(), [&](const std::string& p) {
                    return t.pos.starts_with(p);
                  });
      if (pass) kept.push_back(t);
    }
    out.sentences.push_back(std::move(kept));
  }
  return out;
}

std::int64_t count_sentences(std::span<const Document> docs) {
  std::int64_t n = 0;
  for (const auto& d : docs) n += static_cast<std::int64_t>(d.sentences.size());
  return n;
}

std::vector<Context> extract_contexts(std::span<const Document> docs, std::string_view target) {
  if (target.empty()) throw ContractError("target lemma must be non-empty");
  std::vector<Context> contexts;
  ContextId ordinal = 0;
  for (const auto& doc : docs) {
    for (const auto& sentence : doc.sentences) {
      const ContextId sentence_id = ordinal++;
      bool has_target = std::any_of(sentence.begin(), sentence.end(),
                                    [&](const Token& t) { return t.lemma == target; });
      if (!has_target) continue;
      Context ctx;
      ctx.id = sentence_id;
      ctx.document_id = doc.id;
      ctx.target_lemma = std::string(target);
      for (const auto& t : sentence)
        if (t.lemma != target) ctx.lemmas.push_back(t.lemma);
      contexts.push_back(std::move(ctx));
    }
  }
  return contexts;
}

PseudoWordCorpus make_pseudoword_corpus(std::span<const Document> docs,
                                        const PseudoWordSpec& spec) {
  spec.validate();
  for (const auto& doc : docs)
    for (const auto& sentence : doc.sentences)
      for (const auto& t : sentence)
        if (t.lemma == spec.pseudo)
          throw ContractError("pseudo lemma '" + spec.pseudo + "' already occurs in the corpus");

  PseudoWordCorpus result;
  result.docs.reserve(docs.size());
  ContextId ordinal = 0;
  for (const auto& doc : docs) {
    Document out{doc.id, {}};
    out.sentences.reserve(doc.sentences.size());
    for (const auto& sentence : doc.sentences) {
      const ContextId sentence_id = ordinal++;
      bool saw_a = false;
      bool saw_b = false;
      Sentence replaced = sentence;
      for (auto& t : replaced) {
        if (t.lemma == spec.word_a) {
          saw_a = true;
        } else if (t.lemma == spec.word_b) {
          saw_b = true;
        } else {
          continue;
        }
        t.lemma = spec.pseudo;
        t.surface = spec.pseudo;
      }
      if (saw_a && saw_b)
        result.ambiguous.push_back(sentence_id);
      else if (saw_a)
        result.gold.emplace(sentence_id, spec.word_a);
      else if (saw_b)
        result.gold.emplace(sentence_id, spec.word_b);
      out.sentences.push_back(std::move(replaced));
    }
    result.docs.push_back(std::move(out));
  }
  return result;
}

}  // namespace wsd
