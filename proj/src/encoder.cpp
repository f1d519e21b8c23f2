#include "ttqa/encoder.hpp"

#include <cmath>

namespace ttqa::enc {

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return a.dot(b) / (na * nb);
}

HashEncoder::HashEncoder(int dim, std::uint64_t seed) : dim_(dim), seed_(seed) {}

std::vector<EncToken> HashEncoder::tokenize(std::string_view text) const {
    std::vector<EncToken> out;
    for (const auto& t : text::tokenize(text))
        out.push_back({text::lower(t.text), t.begin, t.end, Segment::seq_a});
    return out;
}

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t seed) {
    std::uint64_t h = 1469598103934665603ull ^ seed;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

// Hashed bag of character n-grams (n = 2..4 over the padded token), signed,
// L2-normalized. Identical tokens map to identical vectors.
Eigen::VectorXd HashEncoder::token_vector(const std::string& lower_tok) const {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim_);
    const std::string padded = "^" + lower_tok + "$";
    for (std::size_t n = 2; n <= 4; ++n) {
        if (padded.size() < n) break;
        for (std::size_t i = 0; i + n <= padded.size(); ++i) {
            const std::uint64_t h = fnv1a(std::string_view(padded).substr(i, n), seed_);
            const int idx = static_cast<int>(h % static_cast<std::uint64_t>(dim_));
            const double sign = ((h >> 32) & 1) ? 1.0 : -1.0;
            v[idx] += sign;
        }
    }
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
    return v;
}

EncodedText HashEncoder::encode(std::string_view text) const {
    EncodedText out;
    out.tokens = tokenize(text);
    if (out.tokens.empty())
        out.tokens.push_back({"[PAD]", 0, 0, Segment::special});
    if (static_cast<int>(out.tokens.size()) > max_len_) out.tokens.resize(max_len_);

    const auto n = static_cast<Eigen::Index>(out.tokens.size());
    out.token_states.resize(n, dim_);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (out.tokens[i].segment == Segment::special) {
            Eigen::VectorXd sentinel = Eigen::VectorXd::Zero(dim_);
            sentinel[0] = 1.0;
            out.token_states.row(i) = sentinel.transpose();
        } else {
            out.token_states.row(i) = token_vector(out.tokens[i].text).transpose();
        }
    }
    out.pooled = out.token_states.colwise().mean();
    const double norm = out.pooled.norm();
    if (norm > 0.0) out.pooled /= norm;
    return out;
}

EncodedText HashEncoder::encode_pair(std::string_view seq_a, std::string_view seq_b) const {
    auto a_toks = tokenize(seq_a);
    auto b_toks = tokenize(seq_b);
    // 3 sentinels: [CLS] a [SEP] b [SEP].
    const std::size_t limit = static_cast<std::size_t>(max_len_);
    const std::size_t budget = limit > a_toks.size() + 3 ? limit - a_toks.size() - 3 : 0;
    if (b_toks.size() > budget) b_toks.resize(budget);

    EncodedText out;
    out.tokens.push_back({"[CLS]", 0, 0, Segment::special});
    for (auto& t : a_toks) {
        t.segment = Segment::seq_a;
        out.tokens.push_back(std::move(t));
    }
    out.tokens.push_back({"[SEP]", 0, 0, Segment::special});
    for (auto& t : b_toks) {
        t.segment = Segment::seq_b;
        out.tokens.push_back(std::move(t));
    }
    out.tokens.push_back({"[SEP]", 0, 0, Segment::special});

    const auto n = static_cast<Eigen::Index>(out.tokens.size());
    out.token_states.resize(n, dim_);
    Eigen::VectorXd content_sum = Eigen::VectorXd::Zero(dim_);
    std::size_t content = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (out.tokens[i].segment == Segment::special) {
            Eigen::VectorXd sentinel = Eigen::VectorXd::Zero(dim_);
            sentinel[0] = 1.0;
            out.token_states.row(i) = sentinel.transpose();
        } else {
            const Eigen::VectorXd v = token_vector(out.tokens[i].text);
            out.token_states.row(i) = v.transpose();
            content_sum += v;
            ++content;
        }
    }
    // The classifier-start state is this encoder's only contextual summary:
    // the normalized mean of the content tokens.
    if (content > 0) {
        Eigen::VectorXd summary = content_sum / static_cast<double>(content);
        const double norm = summary.norm();
        if (norm > 0.0) summary /= norm;
        out.token_states.row(0) = summary.transpose();
    }
    out.pooled = out.token_states.row(0).transpose();
    return out;
}

}  // namespace ttqa::enc
