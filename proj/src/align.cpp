#include "ttqa/align.hpp"

#include <algorithm>
#include <unordered_set>

#include "ttqa/text.hpp"

namespace ttqa::align {

std::string to_string(LinkSource s) {
    switch (s) {
        case LinkSource::name_link: return "name_link";
        case LinkSource::value_link: return "value_link";
        case LinkSource::gold_cell_column: return "gold_cell_column";
        case LinkSource::bridge_column: return "bridge_column";
    }
    return "?";
}

std::vector<BridgeCandidate> find_bridge_cells(const Table& table, const PassageMap& passages) {
    std::vector<BridgeCandidate> out;
    for (int i = 0; i < table.num_rows(); ++i) {
        for (int j = 0; j < table.num_cols(); ++j) {
            const Cell& cell = table.at(i, j);
            for (const auto& pid : cell.passage_ids) {
                auto it = passages.find(pid);
                if (it == passages.end()) continue;
                const std::string& title = it->second.title;
                if (cell.text == title) {
                    out.push_back({CellRef{i, j}, pid, BridgeMatchKind::title_exact});
                } else if (text::normalize_answer(cell.text) == text::normalize_answer(title)) {
                    out.push_back({CellRef{i, j}, pid, BridgeMatchKind::title_normalized});
                }
            }
        }
    }
    return out;
}

namespace {

// Content tokens: lowercase, punctuation and stopwords removed, stemmed.
std::vector<std::string> content_tokens(const std::string& s) {
    std::vector<std::string> out;
    for (const auto& tok : text::tokens_lower(s)) {
        if (text::is_punct_token(tok) || text::is_stopword(tok)) continue;
        out.push_back(text::light_stem(tok));
    }
    return out;
}

}  // namespace

std::set<int> name_based_links(const std::string& question,
                               const std::vector<std::string>& headers) {
    std::unordered_set<std::string> question_tokens;
    for (const auto& tok : text::tokens_lower(question))
        question_tokens.insert(text::light_stem(tok));

    std::set<int> out;
    for (std::size_t j = 0; j < headers.size(); ++j) {
        for (const auto& tok : content_tokens(headers[j])) {
            if (question_tokens.count(tok)) {
                out.insert(static_cast<int>(j));
                break;
            }
        }
    }
    return out;
}

std::set<int> value_based_links(const std::string& question, const Table& table,
                                std::size_t max_ngram) {
    const auto q_tokens = text::value_tokens(question);
    std::set<int> out;
    for (int j = 0; j < table.num_cols(); ++j) {
        for (int i = 0; i < table.num_rows(); ++i) {
            const auto cell_tokens = text::value_tokens(table.at(i, j).text);
            if (cell_tokens.empty() || cell_tokens.size() > max_ngram) continue;
            if (text::contains_ngram(q_tokens, cell_tokens)) {
                out.insert(j);
                break;
            }
        }
    }
    return out;
}

AlignmentLabels make_alignment_labels(const QAExample& example, const Table& table,
                                      const std::optional<BridgeCandidate>& bridge) {
    const int m = table.num_cols();
    AlignmentLabels labels;
    labels.table_id = table.table_id;
    labels.question_id = example.question_id;
    labels.labels.assign(m, 0);
    labels.provenance.assign(m, {});

    for (int j : name_based_links(example.question, table.headers))
        labels.provenance[j].insert(LinkSource::name_link);
    for (int j : value_based_links(example.question, table))
        labels.provenance[j].insert(LinkSource::value_link);
    if (example.gold_cell && example.gold_cell->col >= 0 && example.gold_cell->col < m)
        labels.provenance[example.gold_cell->col].insert(LinkSource::gold_cell_column);
    if (bridge && bridge->cell.col >= 0 && bridge->cell.col < m)
        labels.provenance[bridge->cell.col].insert(LinkSource::bridge_column);

    for (int j = 0; j < m; ++j)
        labels.labels[j] = labels.provenance[j].empty() ? 0 : 1;
    return labels;
}

std::optional<BridgeCandidate> pick_bridge(const QAExample& example, const Table& table,
                                           const PassageMap& passages) {
    if (!example.gold_cell) return std::nullopt;
    const auto candidates = find_bridge_cells(table, passages);
    std::optional<BridgeCandidate> in_row;
    for (const auto& cand : candidates) {
        if (cand.cell == *example.gold_cell) return cand;
        if (!in_row && cand.cell.row == example.gold_cell->row) in_row = cand;
    }
    return in_row;
}

}  // namespace ttqa::align
