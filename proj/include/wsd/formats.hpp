#pragma once

// Text file schemas shared by the pipeline stages. All files are UTF-8,
// tab-separated, LF line endings. Reals are written with 17 significant
// digits so a value survives a write/read cycle bit for bit.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wsd/cluster.hpp"
#include "wsd/corpus.hpp"
#include "wsd/eval.hpp"
#include "wsd/learner.hpp"
#include "wsd/lexicon.hpp"

namespace wsd {

std::string format_real(double value);
double parse_real(const std::string& text, std::size_t line = 0);
std::vector<std::string> split(const std::string& s, char sep);
std::string join(const std::vector<std::string>& parts, char sep);

// Opens for reading/writing or throws IoError naming the path.
std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);
void check_written(std::ofstream& out, const std::filesystem::path& path);

// contexts.tsv:
//   #target=<lemma>
//   #senses=<a,b>          (optional)
//   id<TAB>document_id[<TAB>lemma]...
struct ContextsFile {
  std::string target;
  std::vector<SenseId> senses;
  std::vector<Context> contexts;
};
void write_contexts(std::ostream& out, const ContextsFile& file);
ContextsFile read_contexts(std::istream& in);

// lexicon.tsv: `#min_context_count=<n>` then `lemma<TAB>context_count`.
void write_lexicon(std::ostream& out, const Lexicon& lexicon);
Lexicon read_lexicon(std::istream& in);

// `context_id<TAB>value` lines, used by gold and seed files.
using IdMap = std::map<ContextId, std::string>;
void write_id_map(std::ostream& out, const IdMap& map);
IdMap read_id_map(std::istream& in);
std::vector<std::pair<ContextId, SenseId>> read_seed_file(std::istream& in);

// First column of each line parsed as a context id.
std::vector<ContextId> read_id_list(std::istream& in);

// Model file: #target, #senses, #method, #threshold headers then
// `evidence<TAB>sense<TAB>confidence<TAB>coverage<TAB>iteration` in list order.
void write_model(std::ostream& out, const SenseInventory& inventory, const DecisionList& list);
std::pair<SenseInventory, DecisionList> read_model(std::istream& in);

// Stats TSV with header row.
void write_stats(std::ostream& out, const std::vector<IterationStats>& stats);
std::vector<IterationStats> read_stats(std::istream& in);

// labels.tsv: `context_id<TAB>sense<TAB>iteration`; iteration 0 marks seeds.
void write_labels(std::ostream& out, const std::map<ContextId, Label>& labels);
std::map<ContextId, Label> read_labels(std::istream& in);

// Summary TSV: header row plus one row per run.
void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);

// assignments.tsv: `context_id<TAB>cluster_id`.
void write_assignments(std::ostream& out, const std::vector<ContextId>& ids,
                       const std::vector<int>& assignments);

}  // namespace wsd
