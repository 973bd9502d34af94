#include "ci/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ci/errors.hpp"

namespace ci {

std::string format_sig12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

void CsvTable::add_provenance(const std::string& digest, const std::string& version) {
    comments.push_back("generated by cigyro " + version);
    comments.push_back("config digest: " + digest);
}

std::string CsvTable::to_string() const {
    std::ostringstream os;
    for (const auto& c : comments) os << "# " << c << "\n";
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    if (!text_column_name.empty()) os << (header.empty() ? "" : ",") << text_column_name;
    os << "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw numerical_error("csv row is not rectangular");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (!std::isfinite(row[i]))
                throw numerical_error("csv value is not finite in column " + header[i]);
            os << (i ? "," : "") << format_sig12(row[i]);
        }
        if (!text_column_name.empty())
            os << (row.empty() ? "" : ",") << (r < text_column.size() ? text_column[r] : "");
        os << "\n";
    }
    return os.str();
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open output file: " + path);
    f << table.to_string();
}

}  // namespace ci
