#pragma once

#include <string>
#include <vector>

#include "ttqa/encoder.hpp"
#include "ttqa/types.hpp"

namespace ttqa::filter {

enum class Similarity { cosine, dot };

struct RankedSentence {
    std::size_t index = 0;
    double similarity = 0.0;
};

// Top-k sentences by similarity between question and sentence embeddings,
// descending; ties break toward the lower index.
std::vector<RankedSentence> rank_sentences(const std::string& question,
                                           const std::vector<std::string>& sentences, int k,
                                           const enc::TextEncoder& encoder,
                                           Similarity sim = Similarity::cosine);

struct AppendedSentence {
    std::string passage_id;
    std::size_t sentence_index = 0;
    double similarity = 0.0;
    std::string text;
};

struct ExpandedCell {
    CellRef cell;
    std::string base_text;
    std::vector<AppendedSentence> appended;  // descending similarity
    std::size_t token_count = 0;

    // base_text plus appended sentences, space-joined.
    std::string expanded_text() const;
};

// Ranks the sentences of the cell's linked passages against the question
// and appends them greedily in rank order; sentences that would push the
// token count past `token_budget` are skipped.
ExpandedCell expand_cell(const Cell& cell, const PassageMap& passages,
                         const std::string& question, int k, std::size_t token_budget,
                         const enc::TextEncoder& encoder, Similarity sim = Similarity::cosine);

}  // namespace ttqa::filter
