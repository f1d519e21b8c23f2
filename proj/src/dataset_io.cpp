#include "ttqa/dataset_io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "ttqa/text.hpp"

namespace ttqa::io {

using nlohmann::json;

namespace {

json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return doc;
}

Table parse_table(const json& jt, const std::filesystem::path& path) {
    Table t;
    try {
        t.table_id = jt.at("id").get<std::string>();
        t.headers = jt.at("headers").get<std::vector<std::string>>();
        const auto& jrows = jt.at("rows");
        for (std::size_t i = 0; i < jrows.size(); ++i) {
            std::vector<Cell> row;
            for (std::size_t j = 0; j < jrows[i].size(); ++j) {
                Cell c;
                c.row = static_cast<int>(i);
                c.col = static_cast<int>(j);
                c.text = jrows[i][j].get<std::string>();
                row.push_back(std::move(c));
            }
            t.rows.push_back(std::move(row));
        }
        if (jt.contains("links")) {
            const auto& jlinks = jt.at("links");
            if (jlinks.size() != t.rows.size())
                throw ValidationError("table " + t.table_id + ": links row count mismatch");
            for (std::size_t i = 0; i < jlinks.size(); ++i) {
                if (jlinks[i].size() != t.rows[i].size())
                    throw ValidationError("table " + t.table_id + ": links shape mismatch at row " +
                                          std::to_string(i));
                for (std::size_t j = 0; j < jlinks[i].size(); ++j)
                    t.rows[i][j].passage_ids = jlinks[i][j].get<std::vector<std::string>>();
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": malformed table record" +
                         (t.table_id.empty() ? "" : " '" + t.table_id + "'") + ": " + e.what());
    }
    t.validate();
    return t;
}

QAExample parse_example(const json& je, const std::filesystem::path& path) {
    QAExample ex;
    try {
        ex.question_id = je.at("qid").get<std::string>();
        ex.table_id = je.at("table_id").get<std::string>();
        ex.question = je.at("question").get<std::string>();
        ex.answer_text = je.at("answer").get<std::string>();
        ex.source = answer_source_from_string(je.value("source", "unknown"));
        if (je.contains("gold_cell") && !je.at("gold_cell").is_null()) {
            const auto& gc = je.at("gold_cell");
            ex.gold_cell = CellRef{gc.at(0).get<int>(), gc.at(1).get<int>()};
        }
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": malformed example record" +
                         (ex.question_id.empty() ? "" : " '" + ex.question_id + "'") + ": " +
                         e.what());
    }
    return ex;
}

void validate_example(const QAExample& ex, const Corpus& corpus, const LoadOptions& opts) {
    const Table& t = corpus.table(ex.table_id);  // throws on unknown id
    if (ex.answer_text.empty() && !opts.allow_empty_answers)
        throw ValidationError("example " + ex.question_id + ": empty answer");
    if (ex.gold_cell) {
        if (ex.gold_cell->row < 0 || ex.gold_cell->row >= t.num_rows() ||
            ex.gold_cell->col < 0 || ex.gold_cell->col >= t.num_cols())
            throw ValidationError("example " + ex.question_id + ": gold_cell out of range");
        if (ex.source == AnswerSource::in_table && !ex.answer_text.empty()) {
            const std::string cell_norm =
                text::normalize_answer(t.at(ex.gold_cell->row, ex.gold_cell->col).text);
            const std::string ans_norm = text::normalize_answer(ex.answer_text);
            if (cell_norm.find(ans_norm) == std::string::npos)
                throw ValidationError("example " + ex.question_id +
                                      ": in_table gold cell does not contain the answer");
        }
    }
}

void drop_dangling_links(Corpus& corpus) {
    std::size_t dropped = 0;
    for (auto& t : corpus.tables) {
        for (auto& row : t.rows) {
            for (auto& cell : row) {
                auto& ids = cell.passage_ids;
                auto it = std::remove_if(ids.begin(), ids.end(), [&](const std::string& pid) {
                    return corpus.passages.find(pid) == corpus.passages.end();
                });
                dropped += static_cast<std::size_t>(ids.end() - it);
                ids.erase(it, ids.end());
            }
        }
    }
    if (dropped > 0)
        std::cerr << "[ttqa] warning: dropped " << dropped << " dangling passage link(s)\n";
}

}  // namespace

Corpus load_hybrid_corpus(const std::filesystem::path& path, const LoadOptions& opts) {
    json doc = parse_file(path);
    Corpus corpus;
    for (const auto& jt : doc.value("tables", json::array()))
        corpus.tables.push_back(parse_table(jt, path));
    if (doc.contains("passages")) {
        for (auto it = doc["passages"].begin(); it != doc["passages"].end(); ++it) {
            Passage p;
            p.passage_id = it.key();
            try {
                p.title = it.value().at("title").get<std::string>();
                p.sentences = it.value().at("sentences").get<std::vector<std::string>>();
            } catch (const json::exception& e) {
                throw ParseError(path.string() + ": malformed passage '" + it.key() + "': " +
                                 e.what());
            }
            if (p.sentences.empty())
                throw ValidationError("passage " + p.passage_id + ": empty sentence list");
            corpus.passages.emplace(p.passage_id, std::move(p));
        }
    }
    corpus.rebuild_index();
    drop_dangling_links(corpus);
    for (const auto& je : doc.value("examples", json::array())) {
        QAExample ex = parse_example(je, path);
        validate_example(ex, corpus, opts);
        corpus.examples.push_back(std::move(ex));
    }
    return corpus;
}

namespace {

Table load_wtq_table(const std::filesystem::path& table_path, const std::string& table_id) {
    std::ifstream in(table_path);
    if (!in) throw ParseError("cannot open table file " + table_path.string());
    Table t;
    t.table_id = table_id;
    std::string line;
    bool first = true;
    int row_idx = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t')) fields.push_back(field);
        if (first) {
            t.headers = fields;
            first = false;
        } else {
            std::vector<Cell> row;
            for (std::size_t j = 0; j < fields.size(); ++j)
                row.push_back(Cell{row_idx, static_cast<int>(j), fields[j], {}});
            t.rows.push_back(std::move(row));
            ++row_idx;
        }
    }
    t.validate();
    return t;
}

}  // namespace

Corpus load_wtq_corpus(const std::filesystem::path& tsv_path) {
    std::ifstream in(tsv_path);
    if (!in) throw ParseError("cannot open " + tsv_path.string());
    Corpus corpus;
    const auto base = tsv_path.parent_path();
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string id, question, table_file, answer;
        if (!std::getline(ss, id, '\t') || !std::getline(ss, question, '\t') ||
            !std::getline(ss, table_file, '\t') || !std::getline(ss, answer, '\t'))
            throw ParseError(tsv_path.string() + ":" + std::to_string(line_no) +
                             ": expected id\\tquestion\\ttable-file\\tanswer");
        if (answer.empty())
            throw ValidationError(tsv_path.string() + ":" + std::to_string(line_no) +
                                  ": empty answer field");
        if (corpus.table_index.find(table_file) == corpus.table_index.end()) {
            corpus.tables.push_back(load_wtq_table(base / table_file, table_file));
            corpus.table_index[table_file] = corpus.tables.size() - 1;
        }
        const Table& t = corpus.tables[corpus.table_index[table_file]];

        QAExample ex;
        ex.question_id = id;
        ex.table_id = table_file;
        ex.question = question;
        ex.answer_text = answer;

        // WTQ has no cell supervision: mark the cell only when the answer
        // matches exactly one cell.
        const std::string ans_norm = text::normalize_answer(answer);
        std::optional<CellRef> match;
        int matches = 0;
        for (int i = 0; i < t.num_rows() && matches < 2; ++i) {
            for (int j = 0; j < t.num_cols() && matches < 2; ++j) {
                if (text::normalize_answer(t.at(i, j).text) == ans_norm) {
                    ++matches;
                    match = CellRef{i, j};
                }
            }
        }
        if (matches == 1) {
            ex.source = AnswerSource::in_table;
            ex.gold_cell = match;
        } else {
            ex.source = AnswerSource::unknown;
        }
        corpus.examples.push_back(std::move(ex));
    }
    return corpus;
}

void write_predictions(const std::vector<PredictionRecord>& records,
                       const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& r : records) {
        json j{{"qid", r.qid},
               {"answer", r.answer},
               {"cell", {r.cell.row, r.cell.col}},
               {"row_prob", r.row_prob},
               {"col_prob", r.col_prob},
               {"span_score", r.span_score}};
        out << j.dump() << '\n';
    }
    if (!out) throw std::runtime_error("write failed on " + path.string());
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::vector<PredictionRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
            PredictionRecord r;
            r.qid = j.at("qid").get<std::string>();
            r.answer = j.at("answer").get<std::string>();
            r.cell = CellRef{j.at("cell").at(0).get<int>(), j.at("cell").at(1).get<int>()};
            r.row_prob = j.at("row_prob").get<double>();
            r.col_prob = j.at("col_prob").get<double>();
            r.span_score = j.at("span_score").get<double>();
            out.push_back(std::move(r));
        } catch (const json::exception& e) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
    json doc;
    doc["tables"] = json::array();
    for (const auto& t : corpus.tables) {
        json jt;
        jt["id"] = t.table_id;
        jt["headers"] = t.headers;
        json rows = json::array();
        json links = json::array();
        bool any_link = false;
        for (const auto& row : t.rows) {
            json jrow = json::array();
            json jlinks = json::array();
            for (const auto& cell : row) {
                jrow.push_back(cell.text);
                jlinks.push_back(cell.passage_ids);
                any_link = any_link || !cell.passage_ids.empty();
            }
            rows.push_back(std::move(jrow));
            links.push_back(std::move(jlinks));
        }
        jt["rows"] = std::move(rows);
        if (any_link) jt["links"] = std::move(links);
        doc["tables"].push_back(std::move(jt));
    }
    doc["passages"] = json::object();
    for (const auto& [pid, p] : corpus.passages)
        doc["passages"][pid] = {{"title", p.title}, {"sentences", p.sentences}};
    doc["examples"] = json::array();
    for (const auto& ex : corpus.examples) {
        json je{{"qid", ex.question_id},
                {"table_id", ex.table_id},
                {"question", ex.question},
                {"answer", ex.answer_text},
                {"source", to_string(ex.source)}};
        if (ex.gold_cell)
            je["gold_cell"] = {ex.gold_cell->row, ex.gold_cell->col};
        else
            je["gold_cell"] = nullptr;
        doc["examples"].push_back(std::move(je));
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(1) << '\n';
}

}  // namespace ttqa::io
