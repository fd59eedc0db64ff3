#include "coaxflux/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "coaxflux/error.hpp"

namespace coaxflux {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    for (auto& s : out) {
        s.erase(0, s.find_first_not_of(" \t"));
        auto last = s.find_last_not_of(" \t");
        s.erase(last == std::string::npos ? 0 : last + 1);
    }
    return out;
}

} // namespace

int CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

bool CsvTable::has_column(const std::string& name) const {
    return column_index(name) >= 0;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open CSV file: " + path);

    CsvTable t;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = line;
        auto first = stripped.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (stripped[first] == '#') continue;

        auto fields = split_csv_line(stripped);
        if (!have_header) {
            t.columns = fields;
            have_header = true;
            continue;
        }
        if (fields.size() != t.columns.size())
            throw ParseError(path + ":" + std::to_string(line_no) + ": row has " +
                             std::to_string(fields.size()) + " fields, header has " +
                             std::to_string(t.columns.size()));
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& fstr : fields) {
            try {
                std::size_t pos = 0;
                double v = std::stod(fstr, &pos);
                if (pos != fstr.size()) throw std::invalid_argument(fstr);
                row.push_back(v);
            } catch (const std::exception&) {
                throw ParseError(path + ":" + std::to_string(line_no) +
                                 ": non-numeric field '" + fstr + "'");
            }
        }
        t.rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError(path + ": missing header row");
    return t;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows,
               const std::vector<std::string>& comment_lines) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write CSV file: " + path);
    for (const auto& c : comment_lines) out << "# " << c << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << columns[i] << (i + 1 < columns.size() ? "," : "");
    out << "\n";
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw IoError(path + ": row width mismatch while writing");
        for (std::size_t i = 0; i < row.size(); ++i)
            out << format_number(row[i]) << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
}

} // namespace coaxflux
