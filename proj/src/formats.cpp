#include "wsd/formats.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "wsd/errors.hpp"

namespace wsd {

namespace {

const char* const kStatsHeader =
    "iteration\tcandidates\taccepted\trejected_confidence\trejected_coverage\tnewly_labeled\t"
    "labeled_total\tunlabeled_total";

const char* const kSummaryHeader =
    "run_id\ttarget\tmethod\tthreshold\tmin_coverage\titerations\tconverged\tresidual_fraction\t"
    "decided_fraction\taccuracy_decided\taccuracy_overall_with_fallback\tbaseline_accuracy\t"
    "random_accuracy";

bool read_line(std::istream& in, std::string& line, std::size_t& line_no) {
  if (!std::getline(in, line)) return false;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::int64_t parse_int(const std::string& text, std::size_t line) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw ParseError("expected an integer, got '" + text + "'", line);
  return value;
}

// Reads `#key=value`; throws when the line does not carry `key`.
std::string header_value(const std::string& line, const std::string& key, std::size_t line_no) {
  const std::string prefix = "#" + key + "=";
  if (!line.starts_with(prefix)) throw ParseError("expected header '" + prefix + "'", line_no);
  return line.substr(prefix.size());
}

void require_columns(const std::vector<std::string>& fields, std::size_t n, std::size_t line) {
  if (fields.size() != n)
    throw ParseError("expected " + std::to_string(n) + " columns, got " +
                         std::to_string(fields.size()),
                     line);
}

}  // namespace

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

double parse_real(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw ParseError("trailing characters in real '" + text + "'", line);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("expected a real, got '" + text + "'", line);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? pos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_contexts(std::ostream& out, const ContextsFile& file) {
  out << "#target=" << file.target << '\n';
  if (!file.senses.empty()) out << "#senses=" << join(file.senses, ',') << '\n';
  for (const auto& ctx : file.contexts) {
    out << ctx.id << '\t' << ctx.document_id;
    for (const auto& lemma : ctx.lemmas) out << '\t' << lemma;
    out << '\n';
  }
}

ContextsFile read_contexts(std::istream& in) {
  ContextsFile file;
  std::string line;
  std::size_t line_no = 0;
  if (!read_line(in, line, line_no)) throw ParseError("empty contexts file", 1);
  file.target = header_value(line, "target", line_no);
  if (file.target.empty()) throw ParseError("empty target", line_no);
  while (read_line(in, line, line_no)) {
    if (line.empty()) continue;
    if (line.starts_with("#senses=")) {
      file.senses = split(header_value(line, "senses", line_no), ',');
      continue;
    }
    auto fields = split(line, '\t');
    if (fields.size() < 2) throw ParseError("context record needs id and document id", line_no);
    Context ctx;
    ctx.id = parse_int(fields[0], line_no);
    ctx.document_id = parse_int(fields[1], line_no);
    ctx.target_lemma = file.target;
    for (std::size_t i = 2; i < fields.size(); ++i) {
      if (fields[i].empty()) throw ParseError("empty lemma", line_no);
      ctx.lemmas.push_back(std::move(fields[i]));
    }
    file.contexts.push_back(std::move(ctx));
  }
  return file;
}

void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
  out << "#min_context_count=" << lexicon.min_context_count() << '\n';
  for (const auto& e : lexicon.entries()) out << e.lemma << '\t' << e.context_count << '\n';
}

Lexicon read_lexicon(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!read_line(in, line, line_no)) throw ParseError("empty lexicon file", 1);
  const auto bound = parse_int(header_value(line, "min_context_count", line_no), line_no);
  std::vector<LexiconEntry> entries;
  while (read_line(in, line, line_no)) {
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    require_columns(fields, 2, line_no);
    entries.push_back(LexiconEntry{fields[0], parse_int(fields[1], line_no)});
  }
  try {
    return Lexicon(std::move(entries), bound);
  } catch (const ContractError& e) {
    throw ParseError(e.what(), 0);
  }
}

void write_id_map(std::ostream& out, const IdMap& map) {
  for (const auto& [id, value] : map) out << id << '\t' << value << '\n';
}

IdMap read_id_map(std::istream& in) {
  IdMap map;
  for (const auto& [id, value] : read_seed_file(in))
    if (!map.emplace(id, value).second)
      throw ParseError("duplicate context id " + std::to_string(id), 0);
  return map;
}

std::vector<std::pair<ContextId, SenseId>> read_seed_file(std::istream& in) {
  std::vector<std::pair<ContextId, SenseId>> out;
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line, line_no)) {
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    require_columns(fields, 2, line_no);
    if (fields[1].empty()) throw ParseError("empty sense", line_no);
    out.emplace_back(parse_int(fields[0], line_no), fields[1]);
  }
  return out;
}

std::vector<ContextId> read_id_list(std::istream& in) {
  std::vector<ContextId> out;
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line, line_no)) {
    if (line.empty()) continue;
    out.push_back(parse_int(split(line, '\t').front(), line_no));
  }
  return out;
}

void write_model(std::ostream& out, const SenseInventory& inventory, const DecisionList& list) {
  std::vector<std::string> senses(inventory.senses().begin(), inventory.senses().end());
  out << "#target=" << inventory.target() << '\n';
  out << "#senses=" << join(senses, ',') << '\n';
  out << "#method=" << to_string(list.method) << '\n';
  out << "#threshold=" << format_real(list.threshold) << '\n';
  for (const auto& r : list.rules)
    out << r.evidence << '\t' << r.sense << '\t' << format_real(r.confidence) << '\t'
        << r.coverage << '\t' << r.learned_at_iteration << '\n';
}

std::pair<SenseInventory, DecisionList> read_model(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::string headers[4];
  const char* keys[4] = {"target", "senses", "method", "threshold"};
  for (int i = 0; i < 4; ++i) {
    if (!read_line(in, line, line_no)) throw ParseError("truncated model header", line_no + 1);
    headers[i] = header_value(line, keys[i], line_no);
  }
  std::optional<SenseInventory> inventory;
  DecisionList list;
  try {
    inventory.emplace(headers[0], split(headers[1], ','));
    list.method = parse_confidence_method(headers[2]);
  } catch (const ContractError& e) {
    throw ParseError(e.what(), 0);
  }
  list.threshold = parse_real(headers[3], 4);
  while (read_line(in, line, line_no)) {
    if (line.empty()) continue;
    auto fields = split(line, '\t');
    require_columns(fields, 5, line_no);
    if (!inventory->index_of(fields[1]))
      throw ParseError("rule names unknown sense '" + fields[1] + "'", line_no);
    list.rules.push_back(Rule{fields[0], fields[1], parse_real(fields[2], line_no),
                              parse_int(fields[3], line_no),
                              static_cast<int>(parse_int(fields[4], line_no))});
  }
  return {std::move(*inventory), std::move(list)};
}

void write_stats(std::ostream& out, const std::vector<IterationStats>& stats) {
  out << kStatsHeader << '\n';
  for (const auto& s : stats)
    out << s.iteration << '\t' << s.candidates << '\t' << s.accepted << '\t'
        << s.rejected_confidence << '\t' << s.rejected_coverage << '\t' << s.newly_labeled << '\t'
        << s.labeled_total << '\t' << s.unlabeled_total << '\n';
}

std::vector<IterationStats> read_stats(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!read_line(in, line, line_no) || line != kStatsHeader)
    throw ParseError("missing stats header", 1);
  std::vector<IterationStats> stats;
  while (read_line(in, line, line_no)) {
    if (line.empty()) continue;
    auto f = split(line, '\t');
    require_columns(f, 8, line_no);
    IterationStats s;
    s.iteration = static_cast<int>(parse_int(f[0], line_no));
    s.candidates = parse_int(f[1], line_no);
    s.accepted = parse_int(f[2], line_no);
    s.rejected_confidence = parse_int(f[3], line_no);
    s.rejected_coverage = parse_int(f[4], line_no);
    s.newly_labeled = parse_int(f[5], line_no);
    s.labeled_total = parse_int(f[6], line_no);
    s.unlabeled_total = parse_int(f[7], line_no);
    stats.push_back(s);
  }
  return stats;
}

void write_labels(std::ostream& out, const std::map<ContextId, Label>& labels) {
  for (const auto& [id, label] : labels) out << id << '\t' << label.sense << '\t' << label.iteration << '\n';
}

std::map<ContextId, Label> read_labels(std::istream& in) {
  std::map<ContextId, Label> labels;
  std::string line;
  std::size_t line_no = 0;
  while (read_line(in, line, line_no)) {
    if (line.empty()) continue;
    auto f = split(line, '\t');
    require_columns(f, 3, line_no);
    const auto id = parse_int(f[0], line_no);
    if (!labels.emplace(id, Label{f[1], static_cast<int>(parse_int(f[2], line_no))}).second)
      throw ParseError("duplicate context id " + f[0], line_no);
  }
  return labels;
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const auto& r : rows) {
    const auto& rep = r.report;
    out << r.run_id << '\t' << r.target << '\t' << to_string(r.method) << '\t'
        << format_real(r.threshold) << '\t' << r.min_coverage << '\t' << rep.iterations << '\t'
        << (rep.converged ? "true" : "false") << '\t' << format_real(rep.residual_fraction) << '\t'
        << format_real(rep.decided_fraction) << '\t' << format_real(rep.accuracy_decided) << '\t'
        << format_real(rep.accuracy_overall_with_fallback) << '\t'
        << format_real(rep.baseline_accuracy) << '\t' << format_real(rep.random_accuracy) << '\n';
  }
}

void write_assignments(std::ostream& out, const std::vector<ContextId>& ids,
                       const std::vector<int>& assignments) {
  for (std::size_t i = 0; i < ids.size(); ++i) out << ids[i] << '\t' << assignments.at(i) << '\n';
}

}  // namespace wsd
