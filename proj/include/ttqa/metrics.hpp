#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ttqa/types.hpp"

namespace ttqa::metrics {

// Exact match on normalized strings.
int exact_match(const std::string& pred, const std::string& gold);

// Token-level F1 over normalized token multisets. Returns 1 when both
// sides normalize to empty, 0 when exactly one does.
double token_f1(const std::string& pred, const std::string& gold);

// rank_of_gold is 1-based; nullopt when the gold item is absent.
int hits_at_k(const std::optional<int>& rank_of_gold, int k);
double mrr(const std::optional<int>& rank_of_gold);

enum class ErrorCategory {
    correct,
    same_col_wrong_row,
    same_row_wrong_col,
    both_wrong,
    numeric_required,
};

std::string to_string(ErrorCategory c);

ErrorCategory classify_error(const CellRef& pred_cell, const CellRef& gold_cell,
                             AnswerSource source = AnswerSource::unknown);

// One question's ranked cell candidates (best first).
struct RankedCells {
    std::string qid;
    std::vector<CellRef> cells;
};

// Fraction of questions whose gold row (column) appears among the rows
// (columns) of the first k candidates.
std::pair<double, double> row_col_accuracy(const std::vector<RankedCells>& predictions,
                                           const std::vector<CellRef>& golds, int k);

struct EvalReport {
    double em = 0.0;
    double f1 = 0.0;
    std::map<std::string, std::pair<double, double>> per_source;  // source -> (em, f1)
    std::map<int, double> hits;                                   // k -> Hits@k
    double mrr = 0.0;
    double row_acc = 0.0;
    double col_acc = 0.0;
    std::map<std::string, std::size_t> error_counts;
    std::size_t n = 0;
    bool has_ranking = false;
};

struct ScoredExample {
    std::string qid;
    std::string pred_answer;
    std::string gold_answer;
    AnswerSource source = AnswerSource::unknown;
    std::optional<CellRef> pred_cell;
    std::optional<CellRef> gold_cell;
    // Full candidate ranking when available (enables Hits@k / MRR).
    std::vector<CellRef> ranked_cells;
};

EvalReport evaluate(const std::vector<ScoredExample>& examples,
                    const std::vector<int>& hits_ks = {1, 3, 5});

struct MetricDelta {
    std::string name;
    double with_value = 0.0;
    double without_value = 0.0;
    double delta = 0.0;  // with - without
};

std::vector<MetricDelta> ablation_compare(const EvalReport& report_with,
                                          const EvalReport& report_without);

std::string format_report(const EvalReport& report);
std::string format_deltas(const std::vector<MetricDelta>& deltas);

}  // namespace ttqa::metrics
