#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ttqa/types.hpp"

// Weak-supervision table-question alignment labels from two schema-linking
// rules (column-name occurrence and cell-value occurrence) plus the gold
// cell's column and the bridge entity's column.
namespace ttqa::align {

enum class LinkSource { name_link, value_link, gold_cell_column, bridge_column };

std::string to_string(LinkSource s);

struct AlignmentLabels {
    std::string table_id;
    std::string question_id;
    std::vector<int> labels;                         // length M, each 0/1
    std::vector<std::set<LinkSource>> provenance;    // length M

    bool operator==(const AlignmentLabels&) const = default;
};

enum class BridgeMatchKind { title_exact, title_normalized };

struct BridgeCandidate {
    CellRef cell;
    std::string passage_id;
    BridgeMatchKind match_kind = BridgeMatchKind::title_exact;
};

// Cells whose text equals a linked passage's title, exactly or after
// normalization (lowercase, strip punctuation/articles). Row-major order.
std::vector<BridgeCandidate> find_bridge_cells(const Table& table,
                                               const PassageMap& passages);

// Column j is linked when one of its header's content tokens (lowercased,
// stopwords removed, lightly stemmed) occurs as a question token.
std::set<int> name_based_links(const std::string& question,
                               const std::vector<std::string>& headers);

// Column j is linked when some cell value, normalized (lowercase, ordinal
// words to digits, punctuation stripped), occurs as a contiguous token
// n-gram of the normalized question. Cells longer than `max_ngram` tokens
// do not participate.
std::set<int> value_based_links(const std::string& question, const Table& table,
                                std::size_t max_ngram = 5);

// Union of both rules, the gold cell's column and the bridge column, with
// per-column provenance.
AlignmentLabels make_alignment_labels(const QAExample& example, const Table& table,
                                      const std::optional<BridgeCandidate>& bridge = std::nullopt);

// Bridge used for label generation: the candidate at the gold cell when one
// exists, else the first candidate in the gold row, else none.
std::optional<BridgeCandidate> pick_bridge(const QAExample& example, const Table& table,
                                           const PassageMap& passages);

}  // namespace ttqa::align
