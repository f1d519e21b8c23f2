#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ttqa/text.hpp"

namespace ttqa::enc {

// Origin of a position in an encoded sequence.
enum class Segment : int8_t { special = 0, seq_a = 1, seq_b = 2 };

// One encoder token: its surface piece and the character range it covers
// in the source string of its segment.
struct EncToken {
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;
    Segment segment = Segment::seq_a;
};

struct EncodedText {
    Eigen::VectorXd pooled;        // dimension d
    Eigen::MatrixXd token_states;  // T x d, one row per token
    std::vector<EncToken> tokens;  // length T
};

// Shared text-encoding contract. Inference calls are read-only and safe to
// run concurrently.
class TextEncoder {
public:
    virtual ~TextEncoder() = default;

    virtual int dim() const = 0;
    virtual int max_len() const = 0;

    // The encoder's own tokenization of a single text.
    virtual std::vector<EncToken> tokenize(std::string_view text) const = 0;

    // Single-sequence encoding; pooled is the mean of token states. Empty
    // text yields a single sentinel token state.
    virtual EncodedText encode(std::string_view text) const = 0;

    // Sequence-pair encoding with classifier-start and separator sentinels;
    // pooled is the state at the classifier-start position. When the pair
    // exceeds max_len, seq_b is truncated from the right, never seq_a.
    virtual EncodedText encode_pair(std::string_view seq_a, std::string_view seq_b) const = 0;
};

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Deterministic encoder for tests and offline runs: each token's vector is
// a seeded hash of its character n-grams; no training, no state.
class HashEncoder : public TextEncoder {
public:
    explicit HashEncoder(int dim = 256, std::uint64_t seed = 0x5eed0123);

    int dim() const override { return dim_; }
    int max_len() const override { return max_len_; }
    std::vector<EncToken> tokenize(std::string_view text) const override;
    EncodedText encode(std::string_view text) const override;
    EncodedText encode_pair(std::string_view seq_a, std::string_view seq_b) const override;

private:
    Eigen::VectorXd token_vector(const std::string& lower_tok) const;

    int dim_;
    int max_len_ = 512;
    std::uint64_t seed_;
};

}  // namespace ttqa::enc
