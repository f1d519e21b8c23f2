#include "ttqa/types.hpp"

namespace ttqa {

void Table::validate() const {
    if (headers.empty())
        throw ValidationError("table " + table_id + ": no headers");
    for (const auto& h : headers) {
        if (h.empty())
            throw ValidationError("table " + table_id + ": empty header string");
    }
    if (rows.empty())
        throw ValidationError("table " + table_id + ": no rows");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != headers.size())
            throw ValidationError("table " + table_id + ": row " + std::to_string(i) +
                                  " has " + std::to_string(rows[i].size()) +
                                  " cells, expected " + std::to_string(headers.size()));
    }
}

std::string to_string(AnswerSource s) {
    switch (s) {
        case AnswerSource::in_table: return "in_table";
        case AnswerSource::in_passage: return "in_passage";
        case AnswerSource::compute: return "compute";
        case AnswerSource::unknown: return "unknown";
    }
    return "unknown";
}

AnswerSource answer_source_from_string(const std::string& s) {
    if (s == "in_table") return AnswerSource::in_table;
    if (s == "in_passage") return AnswerSource::in_passage;
    if (s == "compute") return AnswerSource::compute;
    if (s == "unknown" || s.empty()) return AnswerSource::unknown;
    throw ValidationError("unknown answer source tag: " + s);
}

const Table& Corpus::table(const std::string& table_id) const {
    auto it = table_index.find(table_id);
    if (it == table_index.end())
        throw ValidationError("unknown table_id: " + table_id);
    return tables[it->second];
}

void Corpus::rebuild_index() {
    table_index.clear();
    for (std::size_t i = 0; i < tables.size(); ++i)
        table_index[tables[i].table_id] = i;
}

}  // namespace ttqa
