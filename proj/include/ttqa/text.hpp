#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Shared text utilities: tokenization, answer normalization, stopwords,
// ordinal mapping and light stemming. Every module that compares strings
// goes through these so the pipeline agrees on one notion of "same text".
namespace ttqa::text {

// A token plus its character range [begin, end) in the source string.
struct Token {
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Splits on whitespace; ASCII punctuation characters become single-char
// tokens. Bytes >= 0x80 are treated as word characters, so UTF-8 words
// survive as single tokens. Case is preserved.
std::vector<Token> tokenize(std::string_view s);

// tokenize() + lowercase, dropping offsets.
std::vector<std::string> tokens_lower(std::string_view s);

std::string lower(std::string_view s);

bool is_punct_token(const std::string& tok);

// Fixed small English stopword list (articles, prepositions, auxiliaries).
bool is_stopword(const std::string& lower_tok);

// Naive suffix stemming: strips "-es" then "-s" ("yards" -> "yard").
std::string light_stem(const std::string& lower_tok);

// "first".."twentieth" -> "1".."20"; nullopt otherwise. Expects lowercase.
std::optional<std::string> ordinal_to_digits(const std::string& lower_tok);

// Normalization used by value-based linking: lowercase, ordinal words
// mapped to digits, punctuation tokens dropped.
std::vector<std::string> value_tokens(std::string_view s);

// Answer normalization shared by the reader and the metrics: lowercase,
// strip articles (a/an/the) and punctuation, collapse whitespace.
std::string normalize_answer(std::string_view s);

// normalize_answer as a token list (for token-F1 and span matching).
std::vector<std::string> normalize_tokens(std::string_view s);

// True when `needle` occurs as a contiguous subsequence of `hay`.
bool contains_ngram(const std::vector<std::string>& hay,
                    const std::vector<std::string>& needle);

// Number of (possibly overlapping) occurrences of `needle` in `hay`.
std::size_t count_ngram(const std::vector<std::string>& hay,
                        const std::vector<std::string>& needle);

std::string join(const std::vector<std::string>& toks, std::string_view sep = " ");

}  // namespace ttqa::text
