#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ttqa/types.hpp"

namespace ttqa::io {

struct LoadOptions {
    // Test splits ship without answers; loaders reject empty answers unless
    // this is set.
    bool allow_empty_answers = false;
};

// Reads one split in the canonical corpus JSON layout:
//   {"tables":[{"id","headers":[...],"rows":[[text,...],...],
//               "links":[[["pid",...],...],...]}],
//    "passages":{"pid":{"title","sentences":[...]}},
//    "examples":[{"qid","table_id","question","answer","source",
//                 "gold_cell":[r,c]|null}]}
// Dangling cell->passage links are dropped with a warning on stderr.
Corpus load_hybrid_corpus(const std::filesystem::path& path,
                          const LoadOptions& opts = {});

// WTQ-style split: a TSV of "id\tquestion\ttable-file\tanswer" lines where
// table-file is resolved relative to the TSV and holds a tab-separated
// table (first line = headers). No passages. Examples get source=in_table
// plus a gold cell when the answer matches exactly one cell.
Corpus load_wtq_corpus(const std::filesystem::path& tsv_path);

struct PredictionRecord {
    std::string qid;
    std::string answer;
    CellRef cell;
    double row_prob = 0.0;
    double col_prob = 0.0;
    double span_score = 0.0;

    bool operator==(const PredictionRecord&) const = default;
};

// Line-delimited JSON, one record per line, input order preserved.
void write_predictions(const std::vector<PredictionRecord>& records,
                       const std::filesystem::path& path);
std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);

void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace ttqa::io
