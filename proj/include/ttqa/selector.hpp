#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ttqa/align.hpp"
#include "ttqa/nn.hpp"
#include "ttqa/passage_filter.hpp"
#include "ttqa/types.hpp"

namespace ttqa::selector {

using ExpandedMap = std::map<CellRef, filter::ExpandedCell>;

// "header_1 : cell_1 | header_2 : cell_2 | ..." with expanded cell text
// substituted when available.
std::string serialize_row(const Table& table, int row, const ExpandedMap* expanded = nullptr);

// "header_j : cell_1j | cell_2j | ..." down the column.
std::string serialize_column(const Table& table, int col);

struct CellScore {
    int row = 0;
    int col = 0;
    double score = 0.0;
    bool operator==(const CellScore&) const = default;
};

struct CellScoreSheet {
    std::vector<double> row_probs;      // length N
    std::vector<double> col_probs;      // length M
    Eigen::MatrixXd cell_scores;        // N x M, row_prob + col_prob
    std::vector<CellScore> ranking;     // complete, descending, row-major ties
};

// cell_scores[i][j] = row_probs[i] + col_probs[j]; ranking covers all N*M
// cells. Non-finite probabilities are a contract violation.
CellScoreSheet combine_scores(const std::vector<double>& row_probs,
                              const std::vector<double>& col_probs);

// Prefix of the sheet ranking; 1 <= k <= N*M.
std::vector<CellScore> topk_cells(const CellScoreSheet& sheet, int k);

// Per-column sigmoid over an affine map of the element-wise product of the
// pooled question vector with each header representation.
struct AlignmentHead {
    nn::Param* w = nullptr;  // d x 1
    nn::Param* b = nullptr;  // 1 x 1

    AlignmentHead() = default;
    AlignmentHead(int dim, nn::ParamSet& params, std::mt19937_64& rng);

    // header_reps: M x d. Returns per-column probabilities.
    Eigen::VectorXd scores(const Eigen::VectorXd& h_q, const Eigen::MatrixXd& header_reps) const;

    struct Grads {
        Eigen::VectorXd d_w;
        double d_b = 0.0;
        Eigen::VectorXd d_hq;
        Eigen::MatrixXd d_headers;
    };
    // Mean BCE over columns; fills analytic gradients when grads != nullptr.
    double loss(const Eigen::VectorXd& h_q, const Eigen::MatrixXd& header_reps,
                const std::vector<int>& labels, Grads* grads = nullptr) const;
};

// Concatenated headers with the character range each header occupies.
struct PseudoSentence {
    std::string text;
    std::vector<std::pair<std::size_t, std::size_t>> header_ranges;
};
PseudoSentence make_pseudo_sentence(const std::vector<std::string>& headers);

// Mean of the token states falling inside each header's range; M x d.
Eigen::MatrixXd header_representations(const Eigen::MatrixXd& token_states,
                                       const std::vector<enc::EncToken>& tokens,
                                       const PseudoSentence& pseudo);

// The joint selector: shared tiny encoder, separate row/column classifier
// heads and the alignment head.
class SelectorModel {
public:
    static std::unique_ptr<SelectorModel> make(nn::BpeVocab vocab, nn::TinyConfig cfg,
                                               std::uint64_t seed);

    SelectorModel(const SelectorModel&) = delete;
    SelectorModel& operator=(const SelectorModel&) = delete;

    const nn::TinyEncoder& encoder() const { return *encoder_; }
    nn::TinyEncoder& encoder() { return *encoder_; }
    nn::ParamSet& params() { return params_; }
    const nn::TinyConfig& config() const { return cfg_; }

    // One binary sequence-pair classification. Bumps the call counter.
    double classify_pair(const std::string& question, const std::string& second,
                         bool column) const;

    std::uint64_t classifier_calls() const { return classifier_calls_; }
    void reset_classifier_calls() const { classifier_calls_ = 0; }

    void save(const std::filesystem::path& path) const;
    static std::unique_ptr<SelectorModel> load(const std::filesystem::path& path);

    nn::LinearHead& row_head() { return row_head_; }
    nn::LinearHead& col_head() { return col_head_; }
    AlignmentHead& align_head() { return align_head_; }
    const AlignmentHead& align_head() const { return align_head_; }

private:
    SelectorModel(nn::BpeVocab vocab, nn::TinyConfig cfg, std::uint64_t seed);

    nn::BpeVocab vocab_;
    nn::TinyConfig cfg_;
    nn::ParamSet params_;
    std::unique_ptr<nn::TinyEncoder> encoder_;
    nn::LinearHead row_head_, col_head_;
    AlignmentHead align_head_;
    mutable std::uint64_t classifier_calls_ = 0;
};

// Probability per row that it contains the answer; exactly one classifier
// invocation per row.
std::vector<double> score_rows(const std::string& question, const Table& table,
                               const SelectorModel& model, const ExpandedMap* expanded = nullptr);
std::vector<double> score_columns(const std::string& question, const Table& table,
                                  const SelectorModel& model);

// Per-column relevance of the headers to the question, in [0,1].
std::vector<double> align_relevance(const std::string& question,
                                    const std::vector<std::string>& headers,
                                    const AlignmentHead& head, const enc::TextEncoder& encoder);

struct LossBreakdown {
    double l_row = 0.0;
    double l_col = 0.0;
    double l_align = 0.0;
    double sigma = 0.0;
    double total = 0.0;
};

// l_row/l_col: mean BCE over the per-row/per-column classifications with a
// one-hot target at the labelled index; l_align: mean BCE over columns.
// total = l_row + l_col + sigma * l_align.
LossBreakdown joint_loss(const std::vector<double>& row_logits,
                         const std::vector<double>& col_logits,
                         const std::vector<double>& align_scores, int row_label, int col_label,
                         const std::vector<int>& align_labels, double sigma);

struct TrainConfig {
    int epochs = 4;
    int batch = 32;
    double lr = 5e-5;
    double weight_decay = 0.0;
    double sigma = 0.5;
    double grad_clip = 1.0;
    std::uint64_t seed = 13;
    bool use_expanded = false;
};

struct EpochLog {
    LossBreakdown loss;
    double dev_hits1 = 0.0;
};

struct TrainLog {
    std::vector<EpochLog> epochs;
    int best_epoch = -1;
    double best_dev_hits1 = 0.0;
};

struct SelectionEval {
    std::map<int, double> hits;  // k -> Hits@k
    double mrr = 0.0;
    std::size_t n = 0;
};

SelectionEval evaluate_selection(const SelectorModel& model, const Corpus& corpus,
                                 const std::vector<int>& ks = {1, 3, 5},
                                 const std::map<std::string, ExpandedMap>* expanded_by_qid = nullptr);

// Joint training per the multi-task loss; keeps the epoch snapshot with the
// best dev Hits@1 (train-set Hits@1 when no dev corpus is given).
TrainLog train_selector(SelectorModel& model, const Corpus& train,
                        const std::map<std::string, align::AlignmentLabels>& labels,
                        const Corpus* dev, const TrainConfig& cfg,
                        const std::map<std::string, ExpandedMap>* expanded_by_qid = nullptr);

// Question-token x header-token relevance in [0,1] ((1+cosine)/2 of encoder
// token states), for heatmap export.
struct RelevanceMatrix {
    std::vector<std::string> question_tokens;
    std::vector<std::string> header_tokens;
    Eigen::MatrixXd values;
};
RelevanceMatrix token_relevance(const std::string& question,
                                const std::vector<std::string>& headers,
                                const enc::TextEncoder& encoder);

}  // namespace ttqa::selector
