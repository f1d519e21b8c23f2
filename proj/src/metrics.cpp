#include "ttqa/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "ttqa/text.hpp"

namespace ttqa::metrics {

int exact_match(const std::string& pred, const std::string& gold) {
    return text::normalize_answer(pred) == text::normalize_answer(gold) ? 1 : 0;
}

double token_f1(const std::string& pred, const std::string& gold) {
    const auto p = text::normalize_tokens(pred);
    const auto g = text::normalize_tokens(gold);
    if (p.empty() && g.empty()) return 1.0;
    if (p.empty() || g.empty()) return 0.0;

    std::unordered_map<std::string, int> gold_counts;
    for (const auto& t : g) ++gold_counts[t];
    int overlap = 0;
    for (const auto& t : p) {
        auto it = gold_counts.find(t);
        if (it != gold_counts.end() && it->second > 0) {
            ++overlap;
            --it->second;
        }
    }
    if (overlap == 0) return 0.0;
    const double precision = static_cast<double>(overlap) / static_cast<double>(p.size());
    const double recall = static_cast<double>(overlap) / static_cast<double>(g.size());
    return 2.0 * precision * recall / (precision + recall);
}

int hits_at_k(const std::optional<int>& rank_of_gold, int k) {
    if (k < 1) throw ArgumentError("hits_at_k: k must be >= 1");
    return (rank_of_gold && *rank_of_gold >= 1 && *rank_of_gold <= k) ? 1 : 0;
}

double mrr(const std::optional<int>& rank_of_gold) {
    if (!rank_of_gold || *rank_of_gold < 1) return 0.0;
    return 1.0 / static_cast<double>(*rank_of_gold);
}

std::string to_string(ErrorCategory c) {
    switch (c) {
        case ErrorCategory::correct: return "correct";
        case ErrorCategory::same_col_wrong_row: return "same_col_wrong_row";
        case ErrorCategory::same_row_wrong_col: return "same_row_wrong_col";
        case ErrorCategory::both_wrong: return "both_wrong";
        case ErrorCategory::numeric_required: return "numeric_required";
    }
    return "?";
}

ErrorCategory classify_error(const CellRef& pred_cell, const CellRef& gold_cell,
                             AnswerSource source) {
    if (source == AnswerSource::compute && pred_cell != gold_cell)
        return ErrorCategory::numeric_required;
    if (pred_cell == gold_cell) return ErrorCategory::correct;
    if (pred_cell.col == gold_cell.col) return ErrorCategory::same_col_wrong_row;
    if (pred_cell.row == gold_cell.row) return ErrorCategory::same_row_wrong_col;
    return ErrorCategory::both_wrong;
}

std::pair<double, double> row_col_accuracy(const std::vector<RankedCells>& predictions,
                                           const std::vector<CellRef>& golds, int k) {
    if (predictions.size() != golds.size())
        throw ArgumentError("row_col_accuracy: predictions/golds size mismatch");
    if (predictions.empty()) return {0.0, 0.0};
    std::size_t row_hits = 0, col_hits = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const auto& cells = predictions[i].cells;
        const std::size_t top = std::min<std::size_t>(cells.size(), static_cast<std::size_t>(k));
        bool row_hit = false, col_hit = false;
        for (std::size_t r = 0; r < top; ++r) {
            row_hit = row_hit || cells[r].row == golds[i].row;
            col_hit = col_hit || cells[r].col == golds[i].col;
        }
        row_hits += row_hit ? 1 : 0;
        col_hits += col_hit ? 1 : 0;
    }
    const double n = static_cast<double>(predictions.size());
    return {static_cast<double>(row_hits) / n, static_cast<double>(col_hits) / n};
}

EvalReport evaluate(const std::vector<ScoredExample>& examples, const std::vector<int>& hits_ks) {
    EvalReport report;
    report.n = examples.size();
    if (examples.empty()) return report;

    std::map<std::string, std::pair<double, double>> src_sums;
    std::map<std::string, std::size_t> src_counts;
    double em_sum = 0.0, f1_sum = 0.0, mrr_sum = 0.0;
    std::map<int, double> hits_sums;
    for (int k : hits_ks) hits_sums[k] = 0.0;

    std::vector<RankedCells> rankings;
    std::vector<CellRef> ranked_golds;

    for (const auto& ex : examples) {
        const int em = exact_match(ex.pred_answer, ex.gold_answer);
        const double f1 = token_f1(ex.pred_answer, ex.gold_answer);
        em_sum += em;
        f1_sum += f1;
        const std::string src = to_string(ex.source);
        src_sums[src].first += em;
        src_sums[src].second += f1;
        ++src_counts[src];

        if (ex.pred_cell && ex.gold_cell)
            ++report.error_counts[to_string(classify_error(*ex.pred_cell, *ex.gold_cell, ex.source))];

        if (!ex.ranked_cells.empty() && ex.gold_cell) {
            report.has_ranking = true;
            std::optional<int> rank;
            for (std::size_t r = 0; r < ex.ranked_cells.size(); ++r) {
                if (ex.ranked_cells[r] == *ex.gold_cell) {
                    rank = static_cast<int>(r) + 1;
                    break;
                }
            }
            for (int k : hits_ks) hits_sums[k] += hits_at_k(rank, k);
            mrr_sum += mrr(rank);
            rankings.push_back({ex.qid, ex.ranked_cells});
            ranked_golds.push_back(*ex.gold_cell);
        }
    }

    const double n = static_cast<double>(examples.size());
    report.em = em_sum / n;
    report.f1 = f1_sum / n;
    for (const auto& [src, sums] : src_sums) {
        const double c = static_cast<double>(src_counts[src]);
        report.per_source[src] = {sums.first / c, sums.second / c};
    }
    if (report.has_ranking) {
        const double rn = static_cast<double>(rankings.size());
        for (int k : hits_ks) report.hits[k] = hits_sums[k] / rn;
        report.mrr = mrr_sum / rn;
        // Row/column accuracy at the largest requested k.
        const int k = *std::max_element(hits_ks.begin(), hits_ks.end());
        std::tie(report.row_acc, report.col_acc) = row_col_accuracy(rankings, ranked_golds, k);
    }
    return report;
}

std::vector<MetricDelta> ablation_compare(const EvalReport& report_with,
                                          const EvalReport& report_without) {
    std::vector<MetricDelta> deltas;
    auto add = [&](const std::string& name, double w, double wo) {
        deltas.push_back({name, w, wo, w - wo});
    };
    add("em", report_with.em, report_without.em);
    add("f1", report_with.f1, report_without.f1);
    for (const auto& [k, v] : report_with.hits) {
        auto it = report_without.hits.find(k);
        add("hits@" + std::to_string(k), v, it == report_without.hits.end() ? 0.0 : it->second);
    }
    add("mrr", report_with.mrr, report_without.mrr);
    add("row_acc", report_with.row_acc, report_without.row_acc);
    add("col_acc", report_with.col_acc, report_without.col_acc);
    return deltas;
}

std::string format_report(const EvalReport& report) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4);
    os << "n        " << report.n << "\n";
    os << "EM       " << report.em << "\n";
    os << "F1       " << report.f1 << "\n";
    for (const auto& [src, emf1] : report.per_source)
        os << "  " << std::left << std::setw(12) << src << " EM " << emf1.first << "  F1 "
           << emf1.second << "\n";
    if (report.has_ranking) {
        for (const auto& [k, v] : report.hits) os << "Hits@" << k << "   " << v << "\n";
        os << "MRR      " << report.mrr << "\n";
        os << "row_acc  " << report.row_acc << "\n";
        os << "col_acc  " << report.col_acc << "\n";
    }
    if (!report.error_counts.empty()) {
        os << "errors:\n";
        for (const auto& [cat, count] : report.error_counts)
            os << "  " << std::left << std::setw(20) << cat << " " << count << "\n";
    }
    return os.str();
}

std::string format_deltas(const std::vector<MetricDelta>& deltas) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4);
    os << std::left << std::setw(10) << "metric" << std::right << std::setw(10) << "with"
       << std::setw(10) << "without" << std::setw(10) << "delta" << "\n";
    for (const auto& d : deltas)
        os << std::left << std::setw(10) << d.name << std::right << std::setw(10) << d.with_value
           << std::setw(10) << d.without_value << std::setw(10) << std::showpos << d.delta
           << std::noshowpos << "\n";
    return os.str();
}

}  // namespace ttqa::metrics
