#include "ttqa/passage_filter.hpp"

#include <algorithm>

namespace ttqa::filter {

namespace {

double score(const Eigen::VectorXd& a, const Eigen::VectorXd& b, Similarity sim) {
    return sim == Similarity::cosine ? enc::cosine(a, b) : a.dot(b);
}

}  // namespace

std::vector<RankedSentence> rank_sentences(const std::string& question,
                                           const std::vector<std::string>& sentences, int k,
                                           const enc::TextEncoder& encoder, Similarity sim) {
    if (k < 1) throw ArgumentError("rank_sentences: k must be >= 1");
    if (sentences.empty()) return {};

    const Eigen::VectorXd q = encoder.encode(question).pooled;
    std::vector<RankedSentence> ranked;
    ranked.reserve(sentences.size());
    for (std::size_t i = 0; i < sentences.size(); ++i)
        ranked.push_back({i, score(q, encoder.encode(sentences[i]).pooled, sim)});
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.similarity != b.similarity ? a.similarity > b.similarity : a.index < b.index;
    });
    if (ranked.size() > static_cast<std::size_t>(k)) ranked.resize(static_cast<std::size_t>(k));
    return ranked;
}

std::string ExpandedCell::expanded_text() const {
    std::string out = base_text;
    for (const auto& s : appended) {
        if (!out.empty()) out += ' ';
        out += s.text;
    }
    return out;
}

ExpandedCell expand_cell(const Cell& cell, const PassageMap& passages,
                         const std::string& question, int k, std::size_t token_budget,
                         const enc::TextEncoder& encoder, Similarity sim) {
    ExpandedCell out;
    out.cell = {cell.row, cell.col};
    out.base_text = cell.text;
    out.token_count = encoder.tokenize(cell.text).size();
    if (out.token_count >= token_budget)
        throw ArgumentError("expand_cell: token budget does not cover the cell text");

    // Collect candidate sentences from every linked passage, in link order.
    std::vector<std::pair<std::string, std::size_t>> origin;  // (pid, sentence index)
    std::vector<std::string> sentences;
    for (const auto& pid : cell.passage_ids) {
        auto it = passages.find(pid);
        if (it == passages.end()) continue;
        for (std::size_t si = 0; si < it->second.sentences.size(); ++si) {
            origin.emplace_back(pid, si);
            sentences.push_back(it->second.sentences[si]);
        }
    }
    if (sentences.empty()) return out;

    for (const auto& rs : rank_sentences(question, sentences, k, encoder, sim)) {
        const std::size_t cost = encoder.tokenize(sentences[rs.index]).size();
        if (out.token_count + cost > token_budget) continue;
        out.token_count += cost;
        out.appended.push_back({origin[rs.index].first, origin[rs.index].second, rs.similarity,
                                sentences[rs.index]});
    }
    return out;
}

}  // namespace ttqa::filter
