#pragma once

#include <string>
#include <vector>

namespace coaxflux {

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column_index(const std::string& name) const; // -1 if absent
    bool has_column(const std::string& name) const;
};

/// Reads a numeric CSV with a mandatory header row; '#' lines and blank
/// lines are skipped. Ragged or non-numeric rows throw ParseError with the
/// line number.
CsvTable read_csv(const std::string& path);

/// Formats a double with 12 significant digits (the fixed output precision;
/// reruns on identical inputs are byte-identical).
std::string format_number(double v);

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows,
               const std::vector<std::string>& comment_lines = {});

} // namespace coaxflux
