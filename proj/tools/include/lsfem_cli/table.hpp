#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <lsfem/adapt.hpp>

namespace lsfem::cli {

inline constexpr const char* table_header = "L\tnv\tndof\terrL2_u\terrH1_u\tL2_dxph\tinfsup";

/// One data row, `nan` for unavailable values.
std::string format_row(const RunRecord& r);

struct TableRow {
    int level = 0;
    double nv = 0.0;
    double ndof = 0.0;
    double err_l2 = 0.0;
    double err_energy = 0.0;
    double estimator = 0.0;
    double infsup = 0.0;
};

class TableParseError : public std::runtime_error {
public:
    TableParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

std::vector<TableRow> parse_table(std::istream& in);
std::vector<TableRow> load_table(const std::string& path);

} // namespace lsfem::cli
