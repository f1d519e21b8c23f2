#include "ttqa/nn.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <map>

namespace ttqa::nn {

using nlohmann::json;

// ---------------------------------------------------------------------------
// ParamSet / AdamW

Param& ParamSet::create(const std::string& name, Eigen::Index rows, Eigen::Index cols) {
    params_.push_back(Param{name, Eigen::MatrixXd::Zero(rows, cols),
                            Eigen::MatrixXd::Zero(rows, cols)});
    order_.push_back(&params_.back());
    return params_.back();
}

Param* ParamSet::find(const std::string& name) {
    for (Param* p : order_)
        if (p->name == name) return p;
    return nullptr;
}

void ParamSet::zero_grads() {
    for (Param* p : order_) p->grad.setZero();
}

double ParamSet::grad_norm() const {
    double sq = 0.0;
    for (const Param* p : order_) sq += p->grad.squaredNorm();
    return std::sqrt(sq);
}

json ParamSet::to_json() const {
    json out = json::object();
    for (const Param* p : order_) {
        json entry;
        entry["rows"] = p->value.rows();
        entry["cols"] = p->value.cols();
        std::vector<double> data(p->value.size());
        Eigen::Map<Eigen::MatrixXd>(data.data(), p->value.rows(), p->value.cols()) = p->value;
        entry["data"] = std::move(data);
        out[p->name] = std::move(entry);
    }
    return out;
}

void ParamSet::load_json(const json& j) {
    for (Param* p : order_) {
        if (!j.contains(p->name))
            throw std::runtime_error("checkpoint missing parameter " + p->name);
        const auto& entry = j.at(p->name);
        const auto rows = entry.at("rows").get<Eigen::Index>();
        const auto cols = entry.at("cols").get<Eigen::Index>();
        if (rows != p->value.rows() || cols != p->value.cols())
            throw std::runtime_error("checkpoint shape mismatch for " + p->name);
        const auto data = entry.at("data").get<std::vector<double>>();
        p->value = Eigen::Map<const Eigen::MatrixXd>(data.data(), rows, cols);
    }
}

void AdamW::step(ParamSet& params) {
    ++t_;
    const double bc1 = 1.0 - std::pow(opts_.beta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(opts_.beta2, static_cast<double>(t_));
    for (Param* p : params.all()) {
        auto [it, fresh] = slots_.try_emplace(p);
        Slot& s = it->second;
        if (fresh) {
            s.m = Eigen::MatrixXd::Zero(p->value.rows(), p->value.cols());
            s.v = Eigen::MatrixXd::Zero(p->value.rows(), p->value.cols());
        }
        s.m = opts_.beta1 * s.m + (1.0 - opts_.beta1) * p->grad;
        s.v = opts_.beta2 * s.v.array().matrix() +
              (1.0 - opts_.beta2) * p->grad.array().square().matrix();
        const Eigen::ArrayXXd m_hat = s.m.array() / bc1;
        const Eigen::ArrayXXd v_hat = s.v.array() / bc2;
        if (opts_.weight_decay > 0.0)
            p->value -= opts_.lr * opts_.weight_decay * p->value;
        p->value.array() -= opts_.lr * m_hat / (v_hat.sqrt() + opts_.eps);
    }
}

// ---------------------------------------------------------------------------
// BPE vocabulary

namespace {

std::vector<std::string> word_to_chars(const std::string& word) {
    std::vector<std::string> out;
    out.reserve(word.size());
    for (char c : word) out.emplace_back(1, c);
    return out;
}

std::string pair_key(const std::string& a, const std::string& b) {
    return a + '\x01' + b;
}

}  // namespace

BpeVocab BpeVocab::learn(const std::vector<std::string>& texts, std::size_t max_vocab) {
    // Word-type frequency table.
    std::map<std::string, std::size_t> word_freq;
    for (const auto& text : texts)
        for (const auto& tok : text::tokens_lower(text)) ++word_freq[tok];

    std::vector<std::pair<std::vector<std::string>, std::size_t>> words;
    std::map<std::string, bool> chars_seen;
    for (const auto& [word, freq] : word_freq) {
        words.emplace_back(word_to_chars(word), freq);
        for (char c : word) chars_seen[std::string(1, c)] = true;
    }

    BpeVocab vocab;
    vocab.pieces_ = {"[PAD]", "[CLS]", "[SEP]", "[UNK]"};
    for (const auto& [c, _] : chars_seen) vocab.pieces_.push_back(c);

    while (vocab.pieces_.size() < max_vocab) {
        std::map<std::pair<std::string, std::string>, std::size_t> pair_counts;
        for (const auto& [syms, freq] : words)
            for (std::size_t i = 0; i + 1 < syms.size(); ++i)
                pair_counts[{syms[i], syms[i + 1]}] += freq;

        std::pair<std::string, std::string> best;
        std::size_t best_count = 0;
        for (const auto& [pair, count] : pair_counts) {
            // std::map iteration is sorted, so ties resolve to the
            // lexicographically smallest pair.
            if (count > best_count) {
                best = pair;
                best_count = count;
            }
        }
        if (best_count < 2) break;

        const std::string merged = best.first + best.second;
        vocab.merges_.push_back(best);
        vocab.pieces_.push_back(merged);
        for (auto& [syms, freq] : words) {
            for (std::size_t i = 0; i + 1 < syms.size();) {
                if (syms[i] == best.first && syms[i + 1] == best.second) {
                    syms[i] = merged;
                    syms.erase(syms.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                } else {
                    ++i;
                }
            }
        }
    }

    vocab.rebuild_lookup();
    return vocab;
}

void BpeVocab::rebuild_lookup() {
    piece_ids_.clear();
    for (std::size_t i = 0; i < pieces_.size(); ++i) piece_ids_[pieces_[i]] = static_cast<int>(i);
    merge_rank_.clear();
    for (std::size_t i = 0; i < merges_.size(); ++i)
        merge_rank_[pair_key(merges_[i].first, merges_[i].second)] = static_cast<int>(i);
}

std::vector<int> BpeVocab::encode_word(const std::string& lower_word) const {
    std::vector<std::string> syms = word_to_chars(lower_word);
    while (syms.size() >= 2) {
        int best_rank = std::numeric_limits<int>::max();
        std::size_t best_i = 0;
        for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
            auto it = merge_rank_.find(pair_key(syms[i], syms[i + 1]));
            if (it != merge_rank_.end() && it->second < best_rank) {
                best_rank = it->second;
                best_i = i;
            }
        }
        if (best_rank == std::numeric_limits<int>::max()) break;
        syms[best_i] += syms[best_i + 1];
        syms.erase(syms.begin() + static_cast<std::ptrdiff_t>(best_i) + 1);
    }
    std::vector<int> ids;
    ids.reserve(syms.size());
    for (const auto& s : syms) {
        auto it = piece_ids_.find(s);
        ids.push_back(it == piece_ids_.end() ? kUnk : it->second);
    }
    return ids;
}

json BpeVocab::to_json() const {
    json j;
    j["pieces"] = pieces_;
    json merges = json::array();
    for (const auto& [a, b] : merges_) merges.push_back({a, b});
    j["merges"] = std::move(merges);
    return j;
}

BpeVocab BpeVocab::from_json(const json& j) {
    BpeVocab vocab;
    vocab.pieces_ = j.at("pieces").get<std::vector<std::string>>();
    for (const auto& m : j.at("merges"))
        vocab.merges_.emplace_back(m.at(0).get<std::string>(), m.at(1).get<std::string>());
    vocab.rebuild_lookup();
    return vocab;
}

// ---------------------------------------------------------------------------
// TinyEncoder

Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols, double stddev,
                              std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, stddev);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(rng);
    return m;
}

TinyEncoder::TinyEncoder(const BpeVocab* vocab, TinyConfig cfg, ParamSet& params,
                         std::mt19937_64& rng)
    : vocab_(vocab), cfg_(cfg) {
    const int d = cfg_.dim;
    const double w_std = std::sqrt(2.0 / (d + d));
    const double resid_scale = 1.0 / std::sqrt(2.0 * cfg_.layers);

    tok_emb_ = &params.create("tok_emb", vocab_->size(), d);
    tok_emb_->value = normal_matrix(vocab_->size(), d, 0.05, rng);
    pos_emb_ = &params.create("pos_emb", cfg_.max_len, d);
    pos_emb_->value = normal_matrix(cfg_.max_len, d, 0.05, rng);

    for (int l = 0; l < cfg_.layers; ++l) {
        const std::string p = "layer" + std::to_string(l) + ".";
        Layer layer;
        layer.ln1_g = &params.create(p + "ln1_g", 1, d);
        layer.ln1_g->value.setOnes();
        layer.ln1_b = &params.create(p + "ln1_b", 1, d);
        layer.wq = &params.create(p + "wq", d, d);
        layer.wq->value = normal_matrix(d, d, w_std, rng);
        layer.bq = &params.create(p + "bq", 1, d);
        layer.wk = &params.create(p + "wk", d, d);
        layer.wk->value = normal_matrix(d, d, w_std, rng);
        layer.bk = &params.create(p + "bk", 1, d);
        layer.wv = &params.create(p + "wv", d, d);
        layer.wv->value = normal_matrix(d, d, w_std, rng);
        layer.bv = &params.create(p + "bv", 1, d);
        layer.wo = &params.create(p + "wo", d, d);
        layer.wo->value = normal_matrix(d, d, w_std * resid_scale, rng);
        layer.bo = &params.create(p + "bo", 1, d);
        layer.ln2_g = &params.create(p + "ln2_g", 1, d);
        layer.ln2_g->value.setOnes();
        layer.ln2_b = &params.create(p + "ln2_b", 1, d);
        layer.w1 = &params.create(p + "w1", d, cfg_.ffn);
        layer.w1->value = normal_matrix(d, cfg_.ffn, std::sqrt(2.0 / (d + cfg_.ffn)), rng);
        layer.b1 = &params.create(p + "b1", 1, cfg_.ffn);
        layer.w2 = &params.create(p + "w2", cfg_.ffn, d);
        layer.w2->value =
            normal_matrix(cfg_.ffn, d, std::sqrt(2.0 / (d + cfg_.ffn)) * resid_scale, rng);
        layer.b2 = &params.create(p + "b2", 1, d);
        layers_.push_back(layer);
    }
    lnf_g_ = &params.create("lnf_g", 1, d);
    lnf_g_->value.setOnes();
    lnf_b_ = &params.create("lnf_b", 1, d);
}

std::vector<enc::EncToken> TinyEncoder::tokenize(std::string_view text) const {
    std::vector<enc::EncToken> out;
    for (const auto& t : text::tokenize(text)) {
        const std::string lower = text::lower(t.text);
        for (int id : vocab_->encode_word(lower))
            out.push_back({vocab_->piece(id), t.begin, t.end, enc::Segment::seq_a});
    }
    return out;
}

TinyEncoder::Sequence TinyEncoder::prepare(std::string_view text) const {
    Sequence seq;
    for (const auto& t : text::tokenize(text)) {
        const std::string lower = text::lower(t.text);
        for (int id : vocab_->encode_word(lower)) {
            seq.ids.push_back(id);
            seq.tokens.push_back({vocab_->piece(id), t.begin, t.end, enc::Segment::seq_a});
        }
    }
    if (seq.ids.empty()) {
        seq.ids.push_back(BpeVocab::kPad);
        seq.tokens.push_back({"[PAD]", 0, 0, enc::Segment::special});
    }
    if (static_cast<int>(seq.ids.size()) > cfg_.max_len) {
        seq.ids.resize(cfg_.max_len);
        seq.tokens.resize(cfg_.max_len);
    }
    return seq;
}

TinyEncoder::Sequence TinyEncoder::prepare_pair(std::string_view seq_a,
                                                std::string_view seq_b) const {
    Sequence a = prepare(seq_a);
    Sequence b = prepare(seq_b);
    const std::size_t limit = static_cast<std::size_t>(cfg_.max_len);
    if (a.ids.size() + 3 > limit) {
        std::cerr << "[ttqa] warning: first sequence truncated to fit encoder limit\n";
        a.ids.resize(limit - 3);
        a.tokens.resize(limit - 3);
    }
    const std::size_t b_budget = limit - 3 - a.ids.size();
    if (b.ids.size() > b_budget) {
        b.ids.resize(b_budget);
        b.tokens.resize(b_budget);
    }

    Sequence out;
    out.ids.push_back(BpeVocab::kCls);
    out.tokens.push_back({"[CLS]", 0, 0, enc::Segment::special});
    for (std::size_t i = 0; i < a.ids.size(); ++i) {
        out.ids.push_back(a.ids[i]);
        a.tokens[i].segment = enc::Segment::seq_a;
        out.tokens.push_back(a.tokens[i]);
    }
    out.ids.push_back(BpeVocab::kSep);
    out.tokens.push_back({"[SEP]", 0, 0, enc::Segment::special});
    for (std::size_t i = 0; i < b.ids.size(); ++i) {
        out.ids.push_back(b.ids[i]);
        b.tokens[i].segment = enc::Segment::seq_b;
        out.tokens.push_back(b.tokens[i]);
    }
    out.ids.push_back(BpeVocab::kSep);
    out.tokens.push_back({"[SEP]", 0, 0, enc::Segment::special});
    return out;
}

namespace {

constexpr double kLnEps = 1e-5;

// Row-wise layernorm; returns y and fills xhat/istd caches.
Eigen::MatrixXd layernorm_forward(const Eigen::MatrixXd& x, const Eigen::RowVectorXd& gamma,
                                  const Eigen::RowVectorXd& beta, Eigen::MatrixXd& xhat,
                                  Eigen::VectorXd& istd) {
    const Eigen::Index t = x.rows(), d = x.cols();
    xhat.resize(t, d);
    istd.resize(t);
    Eigen::MatrixXd y(t, d);
    for (Eigen::Index r = 0; r < t; ++r) {
        const double mu = x.row(r).mean();
        const Eigen::RowVectorXd centered = x.row(r).array() - mu;
        const double var = centered.squaredNorm() / static_cast<double>(d);
        const double inv = 1.0 / std::sqrt(var + kLnEps);
        istd[r] = inv;
        xhat.row(r) = centered * inv;
        y.row(r) = xhat.row(r).cwiseProduct(gamma) + beta;
    }
    return y;
}

// Backward through layernorm: accumulates dgamma/dbeta, returns dx.
Eigen::MatrixXd layernorm_backward(const Eigen::MatrixXd& dy, const Eigen::MatrixXd& xhat,
                                   const Eigen::VectorXd& istd, const Eigen::RowVectorXd& gamma,
                                   Eigen::MatrixXd& dgamma, Eigen::MatrixXd& dbeta) {
    const Eigen::Index t = dy.rows(), d = dy.cols();
    dgamma += dy.cwiseProduct(xhat).colwise().sum();
    dbeta += dy.colwise().sum();
    Eigen::MatrixXd dx(t, d);
    for (Eigen::Index r = 0; r < t; ++r) {
        const Eigen::RowVectorXd dxhat = dy.row(r).cwiseProduct(gamma);
        const double m1 = dxhat.mean();
        const double m2 = dxhat.cwiseProduct(xhat.row(r)).mean();
        dx.row(r) = istd[r] * (dxhat.array() - m1 - xhat.row(r).array() * m2).matrix();
    }
    return dx;
}

}  // namespace

Eigen::MatrixXd TinyEncoder::forward(const std::vector<int>& ids, Trace* trace) const {
    const int d = cfg_.dim;
    const int heads = cfg_.heads;
    const int dh = d / heads;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
    const Eigen::Index t = static_cast<Eigen::Index>(ids.size());

    Eigen::MatrixXd x(t, d);
    for (Eigen::Index i = 0; i < t; ++i)
        x.row(i) = tok_emb_->value.row(ids[i]) + pos_emb_->value.row(i);

    if (trace) {
        trace->ids = ids;
        trace->layers.clear();
        trace->layers.reserve(layers_.size());
    }

    for (const Layer& layer : layers_) {
        LayerTrace lt;
        if (trace) lt.x_in = x;

        Eigen::MatrixXd xhat1;
        Eigen::VectorXd istd1;
        const Eigen::MatrixXd a = layernorm_forward(x, layer.ln1_g->value.row(0),
                                                    layer.ln1_b->value.row(0), xhat1, istd1);
        Eigen::MatrixXd q = (a * layer.wq->value).rowwise() + layer.bq->value.row(0);
        Eigen::MatrixXd k = (a * layer.wk->value).rowwise() + layer.bk->value.row(0);
        Eigen::MatrixXd v = (a * layer.wv->value).rowwise() + layer.bv->value.row(0);

        Eigen::MatrixXd ctx(t, d);
        std::vector<Eigen::MatrixXd> attn;
        attn.reserve(heads);
        for (int h = 0; h < heads; ++h) {
            const auto qh = q.middleCols(h * dh, dh);
            const auto kh = k.middleCols(h * dh, dh);
            const auto vh = v.middleCols(h * dh, dh);
            Eigen::MatrixXd scores = qh * kh.transpose() * scale;
            for (Eigen::Index r = 0; r < t; ++r) {
                const double mx = scores.row(r).maxCoeff();
                Eigen::RowVectorXd e = (scores.row(r).array() - mx).exp();
                scores.row(r) = e / e.sum();
            }
            ctx.middleCols(h * dh, dh) = scores * vh;
            attn.push_back(std::move(scores));
        }
        const Eigen::MatrixXd o = (ctx * layer.wo->value).rowwise() + layer.bo->value.row(0);
        Eigen::MatrixXd x_mid = x + o;

        Eigen::MatrixXd xhat2;
        Eigen::VectorXd istd2;
        const Eigen::MatrixXd b = layernorm_forward(x_mid, layer.ln2_g->value.row(0),
                                                    layer.ln2_b->value.row(0), xhat2, istd2);
        Eigen::MatrixXd pre = (b * layer.w1->value).rowwise() + layer.b1->value.row(0);
        Eigen::MatrixXd act = pre.cwiseMax(0.0);
        const Eigen::MatrixXd m = (act * layer.w2->value).rowwise() + layer.b2->value.row(0);
        x = x_mid + m;

        if (trace) {
            lt.ln1_xhat = std::move(xhat1);
            lt.ln1_istd = std::move(istd1);
            lt.q = std::move(q);
            lt.k = std::move(k);
            lt.v = std::move(v);
            lt.attn = std::move(attn);
            lt.ctx = std::move(ctx);
            lt.x_mid = std::move(x_mid);
            lt.ln2_xhat = std::move(xhat2);
            lt.ln2_istd = std::move(istd2);
            lt.ffn_pre = std::move(pre);
            lt.ffn_act = std::move(act);
            trace->layers.push_back(std::move(lt));
        }
    }

    Eigen::MatrixXd xhatf;
    Eigen::VectorXd istdf;
    Eigen::MatrixXd y =
        layernorm_forward(x, lnf_g_->value.row(0), lnf_b_->value.row(0), xhatf, istdf);
    if (trace) {
        trace->final_in = std::move(x);
        trace->final_xhat = std::move(xhatf);
        trace->final_istd = std::move(istdf);
        trace->states = y;
    }
    return y;
}

void TinyEncoder::backward(const Trace& trace, const Eigen::MatrixXd& d_states) {
    const int d = cfg_.dim;
    const int heads = cfg_.heads;
    const int dh = d / heads;
    const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

    Eigen::MatrixXd dx = layernorm_backward(d_states, trace.final_xhat, trace.final_istd,
                                            lnf_g_->value.row(0), lnf_g_->grad, lnf_b_->grad);

    for (int l = static_cast<int>(layers_.size()) - 1; l >= 0; --l) {
        const Layer& layer = layers_[l];
        const LayerTrace& lt = trace.layers[static_cast<std::size_t>(l)];
        const Eigen::Index t = lt.x_in.rows();

        // FFN branch.
        const Eigen::MatrixXd b_out =
            (lt.ln2_xhat.array().rowwise() * layer.ln2_g->value.row(0).array()).matrix().rowwise() +
            layer.ln2_b->value.row(0);
        const Eigen::MatrixXd& dm = dx;
        layer.w2->grad += lt.ffn_act.transpose() * dm;
        layer.b2->grad += dm.colwise().sum();
        Eigen::MatrixXd dact = dm * layer.w2->value.transpose();
        Eigen::MatrixXd dpre =
            (lt.ffn_pre.array() > 0.0).select(dact, Eigen::MatrixXd::Zero(t, cfg_.ffn));
        layer.w1->grad += b_out.transpose() * dpre;
        layer.b1->grad += dpre.colwise().sum();
        const Eigen::MatrixXd db = dpre * layer.w1->value.transpose();
        Eigen::MatrixXd dx_mid =
            dx + layernorm_backward(db, lt.ln2_xhat, lt.ln2_istd, layer.ln2_g->value.row(0),
                                    layer.ln2_g->grad, layer.ln2_b->grad);

        // Attention branch.
        const Eigen::MatrixXd& do_ = dx_mid;
        layer.wo->grad += lt.ctx.transpose() * do_;
        layer.bo->grad += do_.colwise().sum();
        const Eigen::MatrixXd dctx = do_ * layer.wo->value.transpose();

        Eigen::MatrixXd dq(t, d), dk(t, d), dv(t, d);
        for (int h = 0; h < heads; ++h) {
            const auto qh = lt.q.middleCols(h * dh, dh);
            const auto kh = lt.k.middleCols(h * dh, dh);
            const auto vh = lt.v.middleCols(h * dh, dh);
            const Eigen::MatrixXd& s = lt.attn[static_cast<std::size_t>(h)];
            const auto dctx_h = dctx.middleCols(h * dh, dh);

            dv.middleCols(h * dh, dh) = s.transpose() * dctx_h;
            Eigen::MatrixXd ds = dctx_h * vh.transpose();
            Eigen::MatrixXd dz(t, t);
            for (Eigen::Index r = 0; r < t; ++r) {
                const double dot = ds.row(r).dot(s.row(r));
                dz.row(r) = s.row(r).cwiseProduct((ds.row(r).array() - dot).matrix());
            }
            dq.middleCols(h * dh, dh) = dz * kh * scale;
            dk.middleCols(h * dh, dh) = dz.transpose() * qh * scale;
        }

        const Eigen::MatrixXd a_out =
            (lt.ln1_xhat.array().rowwise() * layer.ln1_g->value.row(0).array()).matrix().rowwise() +
            layer.ln1_b->value.row(0);
        layer.wq->grad += a_out.transpose() * dq;
        layer.bq->grad += dq.colwise().sum();
        layer.wk->grad += a_out.transpose() * dk;
        layer.bk->grad += dk.colwise().sum();
        layer.wv->grad += a_out.transpose() * dv;
        layer.bv->grad += dv.colwise().sum();
        const Eigen::MatrixXd da = dq * layer.wq->value.transpose() +
                                   dk * layer.wk->value.transpose() +
                                   dv * layer.wv->value.transpose();
        dx = dx_mid + layernorm_backward(da, lt.ln1_xhat, lt.ln1_istd, layer.ln1_g->value.row(0),
                                         layer.ln1_g->grad, layer.ln1_b->grad);
    }

    for (Eigen::Index i = 0; i < dx.rows(); ++i) {
        tok_emb_->grad.row(trace.ids[static_cast<std::size_t>(i)]) += dx.row(i);
        pos_emb_->grad.row(i) += dx.row(i);
    }
}

enc::EncodedText TinyEncoder::encode(std::string_view text) const {
    const Sequence seq = prepare(text);
    enc::EncodedText out;
    out.token_states = forward(seq.ids);
    out.tokens = seq.tokens;
    out.pooled = out.token_states.colwise().mean();
    return out;
}

enc::EncodedText TinyEncoder::encode_pair(std::string_view seq_a, std::string_view seq_b) const {
    const Sequence seq = prepare_pair(seq_a, seq_b);
    enc::EncodedText out;
    out.token_states = forward(seq.ids);
    out.tokens = seq.tokens;
    out.pooled = out.token_states.row(0).transpose();
    return out;
}

// ---------------------------------------------------------------------------
// Heads and losses

LinearHead::LinearHead(const std::string& name, int dim, ParamSet& params, std::mt19937_64& rng) {
    w = &params.create(name + ".w", dim, 1);
    w->value = normal_matrix(dim, 1, 0.05, rng);
    b = &params.create(name + ".b", 1, 1);
}

double LinearHead::logit(const Eigen::VectorXd& h) const {
    return (h.transpose() * w->value)(0, 0) + b->value(0, 0);
}

Eigen::VectorXd LinearHead::backward(const Eigen::VectorXd& h, double d_logit) {
    w->grad += d_logit * h;
    b->grad(0, 0) += d_logit;
    return d_logit * w->value.col(0);
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double bce_with_logit(double logit, double target) {
    // max(z,0) - z*y + log(1 + exp(-|z|))
    return std::max(logit, 0.0) - logit * target + std::log1p(std::exp(-std::abs(logit)));
}

double bce(double prob, double target) {
    const double p = std::clamp(prob, 1e-12, 1.0 - 1e-12);
    return -(target * std::log(p) + (1.0 - target) * std::log(1.0 - p));
}

}  // namespace ttqa::nn
