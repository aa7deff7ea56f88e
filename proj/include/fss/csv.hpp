#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fss::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// RFC 4180 reader: quoted fields, doubled quotes, embedded separators and
// line breaks, CRLF or LF endings. A UTF-8 BOM is skipped. Every record
// must have as many fields as the header.
Table parse(std::istream& in, char separator = ',');
Table read_file(const std::string& path, char separator = ',');

// Quotes a field only when needed.
std::string escape(const std::string& field, char separator = ',');

} // namespace fss::csv
