#include "ttqa/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ttqa::text {

namespace {

bool is_word_byte(unsigned char c) {
    return std::isalnum(c) || c >= 0x80 || c == '\'';
}

const std::unordered_set<std::string>& stopwords() {
    static const std::unordered_set<std::string> set = {
        "a",    "an",   "the",  "of",   "in",   "on",    "at",    "by",
        "for",  "with", "to",   "from", "and",  "or",    "is",    "are",
        "was",  "were", "be",   "been", "being", "as",   "that",  "which",
        "who",  "whom", "whose", "what", "when", "where", "how",  "why",
        "do",   "does", "did",  "has",  "have", "had",   "it",    "its",
        "this", "these", "those", "s",   "t",    "not",   "no",
    };
    return set;
}

const std::unordered_map<std::string, std::string>& ordinal_map() {
    static const std::unordered_map<std::string, std::string> map = {
        {"first", "1"},       {"second", "2"},     {"third", "3"},
        {"fourth", "4"},      {"fifth", "5"},      {"sixth", "6"},
        {"seventh", "7"},     {"eighth", "8"},     {"ninth", "9"},
        {"tenth", "10"},      {"eleventh", "11"},  {"twelfth", "12"},
        {"thirteenth", "13"}, {"fourteenth", "14"}, {"fifteenth", "15"},
        {"sixteenth", "16"},  {"seventeenth", "17"}, {"eighteenth", "18"},
        {"nineteenth", "19"}, {"twentieth", "20"},
    };
    return map;
}

}  // namespace

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (is_word_byte(c)) {
            std::size_t j = i + 1;
            while (j < n && is_word_byte(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({std::string(s.substr(i, j - i)), i, j});
            i = j;
        } else {
            out.push_back({std::string(1, s[i]), i, i + 1});
            ++i;
        }
    }
    return out;
}

std::vector<std::string> tokens_lower(std::string_view s) {
    std::vector<std::string> out;
    for (const auto& t : tokenize(s)) out.push_back(lower(t.text));
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_punct_token(const std::string& tok) {
    return tok.size() == 1 && std::ispunct(static_cast<unsigned char>(tok[0]));
}

bool is_stopword(const std::string& lower_tok) {
    return stopwords().count(lower_tok) > 0;
}

std::string light_stem(const std::string& lower_tok) {
    if (lower_tok.size() > 3 && lower_tok.ends_with("es"))
        return lower_tok.substr(0, lower_tok.size() - 2);
    if (lower_tok.size() > 2 && lower_tok.ends_with("s"))
        return lower_tok.substr(0, lower_tok.size() - 1);
    return lower_tok;
}

std::optional<std::string> ordinal_to_digits(const std::string& lower_tok) {
    auto it = ordinal_map().find(lower_tok);
    if (it == ordinal_map().end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> value_tokens(std::string_view s) {
    std::vector<std::string> out;
    for (const auto& t : tokenize(s)) {
        std::string tok = lower(t.text);
        if (is_punct_token(tok)) continue;
        if (auto digits = ordinal_to_digits(tok)) tok = *digits;
        out.push_back(std::move(tok));
    }
    return out;
}

std::vector<std::string> normalize_tokens(std::string_view s) {
    std::vector<std::string> out;
    for (const auto& t : tokenize(s)) {
        std::string tok = lower(t.text);
        if (is_punct_token(tok)) continue;
        if (tok == "a" || tok == "an" || tok == "the") continue;
        out.push_back(std::move(tok));
    }
    return out;
}

std::string normalize_answer(std::string_view s) {
    return join(normalize_tokens(s));
}

bool contains_ngram(const std::vector<std::string>& hay,
                    const std::vector<std::string>& needle) {
    return count_ngram(hay, needle) > 0;
}

std::size_t count_ngram(const std::vector<std::string>& hay,
                        const std::vector<std::string>& needle) {
    if (needle.empty() || needle.size() > hay.size()) return 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i + needle.size() <= hay.size(); ++i) {
        if (std::equal(needle.begin(), needle.end(), hay.begin() + i)) ++count;
    }
    return count;
}

std::string join(const std::vector<std::string>& toks, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (i) out += sep;
        out += toks[i];
    }
    return out;
}

}  // namespace ttqa::text
