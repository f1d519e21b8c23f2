#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ttqa {

// Record-level failure while reading an input file.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Loaded data violates a documented invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument to an operation (out-of-range k, sigma outside [0,1], ...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A pipeline stage was invoked before the stage that produces its inputs.
struct MissingPrerequisite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CellRef {
    int row = -1;
    int col = -1;
    bool operator==(const CellRef&) const = default;
    bool operator<(const CellRef& o) const {
        return row != o.row ? row < o.row : col < o.col;
    }
};

struct Cell {
    int row = 0;
    int col = 0;
    std::string text;
    std::vector<std::string> passage_ids;
};

struct Table {
    std::string table_id;
    std::vector<std::string> headers;        // length M
    std::vector<std::vector<Cell>> rows;     // N rows, each of length M

    int num_rows() const { return static_cast<int>(rows.size()); }
    int num_cols() const { return static_cast<int>(headers.size()); }
    const Cell& at(int r, int c) const { return rows.at(r).at(c); }

    // Throws ValidationError when the table is not rectangular or has
    // empty headers / zero rows.
    void validate() const;
};

struct Passage {
    std::string passage_id;
    std::string title;
    std::vector<std::string> sentences;
};

enum class AnswerSource { in_table, in_passage, compute, unknown };

std::string to_string(AnswerSource s);
AnswerSource answer_source_from_string(const std::string& s);

struct QAExample {
    std::string question_id;
    std::string table_id;
    std::string question;
    std::string answer_text;
    std::optional<CellRef> gold_cell;
    AnswerSource source = AnswerSource::unknown;
};

using PassageMap = std::map<std::string, Passage>;

// A loaded split: tables, the passage corpus and the question list.
// Immutable after loading; safe to share across threads.
struct Corpus {
    std::vector<Table> tables;
    PassageMap passages;
    std::vector<QAExample> examples;

    std::unordered_map<std::string, std::size_t> table_index;

    const Table& table(const std::string& table_id) const;
    void rebuild_index();
};

}  // namespace ttqa
