#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <deque>
#include <memory>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "ttqa/encoder.hpp"

namespace ttqa::nn {

struct Param {
    std::string name;
    Eigen::MatrixXd value;
    Eigen::MatrixXd grad;
};

// Owns the parameters of one model; iteration order is creation order,
// which makes serialization and optimizer state deterministic.
class ParamSet {
public:
    Param& create(const std::string& name, Eigen::Index rows, Eigen::Index cols);
    const std::vector<Param*>& all() { return order_; }
    Param* find(const std::string& name);
    void zero_grads();
    double grad_norm() const;

    nlohmann::json to_json() const;
    // Loads values into already-created params; shapes must match.
    void load_json(const nlohmann::json& j);

private:
    std::deque<Param> params_;
    std::vector<Param*> order_;
};

struct AdamWOptions {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double weight_decay = 0.0;
};

class AdamW {
public:
    explicit AdamW(AdamWOptions opts) : opts_(opts) {}
    void step(ParamSet& params);
    AdamWOptions& options() { return opts_; }

private:
    struct Slot {
        Eigen::MatrixXd m, v;
    };
    AdamWOptions opts_;
    std::int64_t t_ = 0;
    std::unordered_map<Param*, Slot> slots_;
};

// Byte-pair vocabulary learned from a text corpus. Special ids are fixed so
// checkpoints stay compatible across runs.
class BpeVocab {
public:
    static constexpr int kPad = 0;
    static constexpr int kCls = 1;
    static constexpr int kSep = 2;
    static constexpr int kUnk = 3;

    static BpeVocab learn(const std::vector<std::string>& texts, std::size_t max_vocab);

    int size() const { return static_cast<int>(pieces_.size()); }
    const std::string& piece(int id) const { return pieces_.at(id); }

    // BPE pieces of one lowercase word (ids).
    std::vector<int> encode_word(const std::string& lower_word) const;

    nlohmann::json to_json() const;
    static BpeVocab from_json(const nlohmann::json& j);

private:
    std::vector<std::string> pieces_;
    std::unordered_map<std::string, int> piece_ids_;
    std::vector<std::pair<std::string, std::string>> merges_;
    std::unordered_map<std::string, int> merge_rank_;

    void rebuild_lookup();
};

struct TinyConfig {
    int dim = 64;
    int layers = 2;
    int heads = 4;
    int ffn = 256;
    int max_len = 512;
};

// Two-layer pre-norm transformer over a BPE vocabulary, with the backward
// pass written out so the whole model trains without an autograd framework.
class TinyEncoder : public enc::TextEncoder {
public:
    TinyEncoder(const BpeVocab* vocab, TinyConfig cfg, ParamSet& params, std::mt19937_64& rng);

    int dim() const override { return cfg_.dim; }
    int max_len() const override { return cfg_.max_len; }
    const TinyConfig& config() const { return cfg_; }

    std::vector<enc::EncToken> tokenize(std::string_view text) const override;
    enc::EncodedText encode(std::string_view text) const override;
    enc::EncodedText encode_pair(std::string_view seq_a, std::string_view seq_b) const override;

    // --- training interface ---
    struct Sequence {
        std::vector<int> ids;
        std::vector<enc::EncToken> tokens;
    };
    // BPE-encode one text, no sentinels.
    Sequence prepare(std::string_view text) const;
    // [CLS] a [SEP] b [SEP]; b truncated from the right when over max_len.
    Sequence prepare_pair(std::string_view seq_a, std::string_view seq_b) const;

    struct LayerTrace {
        Eigen::MatrixXd x_in;          // T x d, input to the block
        Eigen::MatrixXd ln1_xhat;      // T x d
        Eigen::VectorXd ln1_istd;      // T
        Eigen::MatrixXd q, k, v;       // T x d
        std::vector<Eigen::MatrixXd> attn;  // per head, T x T softmax rows
        Eigen::MatrixXd ctx;           // T x d
        Eigen::MatrixXd x_mid;         // after attention residual
        Eigen::MatrixXd ln2_xhat;
        Eigen::VectorXd ln2_istd;
        Eigen::MatrixXd ffn_pre;       // T x ffn, pre-activation
        Eigen::MatrixXd ffn_act;       // T x ffn
    };
    struct Trace {
        std::vector<int> ids;
        std::vector<LayerTrace> layers;
        Eigen::MatrixXd final_in;      // input to the final layernorm
        Eigen::MatrixXd final_xhat;
        Eigen::VectorXd final_istd;
        Eigen::MatrixXd states;        // T x d output
    };

    // Forward over token ids; fills `trace` when training.
    Eigen::MatrixXd forward(const std::vector<int>& ids, Trace* trace = nullptr) const;
    // Accumulates parameter gradients given d(loss)/d(states).
    void backward(const Trace& trace, const Eigen::MatrixXd& d_states);

    const BpeVocab& vocab() const { return *vocab_; }

private:
    const BpeVocab* vocab_;
    TinyConfig cfg_;

    Param* tok_emb_;   // vocab x d
    Param* pos_emb_;   // max_len x d
    struct Layer {
        Param *ln1_g, *ln1_b;
        Param *wq, *bq, *wk, *bk, *wv, *bv, *wo, *bo;
        Param *ln2_g, *ln2_b;
        Param *w1, *b1, *w2, *b2;
    };
    std::vector<Layer> layers_;
    Param *lnf_g_, *lnf_b_;
};

// Binary classifier head: logit = w . h + b.
struct LinearHead {
    Param* w = nullptr;  // d x 1
    Param* b = nullptr;  // 1 x 1

    LinearHead() = default;
    LinearHead(const std::string& name, int dim, ParamSet& params, std::mt19937_64& rng);

    double logit(const Eigen::VectorXd& h) const;
    // Accumulates dW/db and returns d(loss)/dh for upstream gradient d_logit.
    Eigen::VectorXd backward(const Eigen::VectorXd& h, double d_logit);
};

double sigmoid(double z);
// Numerically stable binary cross-entropy from a raw logit.
double bce_with_logit(double logit, double target);
// BCE from a probability (clamped away from 0/1).
double bce(double prob, double target);

Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols, double stddev,
                              std::mt19937_64& rng);

}  // namespace ttqa::nn
