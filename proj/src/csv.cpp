#include "fss/csv.hpp"
#include "fss/errors.hpp"

#include <fstream>
#include <istream>
#include <iterator>
#include <sstream>

namespace fss::csv {

namespace {

std::vector<std::vector<std::string>> split_records(const std::string& text, char sep)
{
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    std::size_t line = 1;

    auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        // A blank line yields one empty unquoted field; skip it.
        if (!(record.size() == 1 && record.front().empty())) {
            records.push_back(std::move(record));
        }
        record.clear();
    };

    std::size_t i = 0;
    if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) {
        i = 3;
    }
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') {
                    ++line;
                }
                field.push_back(c);
            }
            continue;
        }
        if (c == '"') {
            if (!field.empty() || field_was_quoted) {
                throw DataError("csv: stray quote on line " + std::to_string(line));
            }
            in_quotes = true;
            field_was_quoted = true;
        } else if (c == sep) {
            end_field();
        } else if (c == '\r') {
            if (i + 1 < text.size() && text[i + 1] == '\n') {
                ++i;
            }
            end_record();
            ++line;
        } else if (c == '\n') {
            end_record();
            ++line;
        } else {
            if (field_was_quoted) {
                throw DataError("csv: text after closing quote on line " + std::to_string(line));
            }
            field.push_back(c);
        }
    }
    if (in_quotes) {
        throw DataError("csv: unterminated quoted field");
    }
    if (!field.empty() || field_was_quoted || !record.empty()) {
        end_record();
    }
    return records;
}

} // namespace

Table parse(std::istream& in, char separator)
{
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    auto records = split_records(text, separator);
    Table table;
    if (records.empty()) {
        return table;
    }
    table.header = std::move(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size()) {
            throw DataError("csv: record " + std::to_string(r) + " has " +
                            std::to_string(records[r].size()) + " fields, header has " +
                            std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

Table read_file(const std::string& path, char separator)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open " + path);
    }
    return parse(in, separator);
}

std::string escape(const std::string& field, char separator)
{
    if (field.find_first_of(std::string{separator, '"', '\n', '\r'}) == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

} // namespace fss::csv
