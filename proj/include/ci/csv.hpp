#pragma once

#include <string>
#include <vector>

namespace ci {

// Rectangular numeric table with '#'-prefixed provenance comments. Values are
// written with 12 significant digits; non-finite values are rejected. An
// optional trailing text column carries per-row error notes.
struct CsvTable {
    std::vector<std::string> comments;  // without the leading '#'
    std::vector<std::string> header;    // column names with units
    std::vector<std::vector<double>> rows;
    std::string text_column_name;       // empty: no text column
    std::vector<std::string> text_column;

    void add_provenance(const std::string& digest, const std::string& version);
    std::string to_string() const;
};

void write_csv(const std::string& path, const CsvTable& table);

std::string format_sig12(double x);

}  // namespace ci
