#include "lsfem_cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace lsfem::cli {

namespace {

std::string real(const std::optional<double>& v)
{
    if (!v || std::isnan(*v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", *v);
    return buf;
}

double parse_field(const std::string& text, int line)
{
    if (text == "nan")
        return std::nan("");
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty())
        throw TableParseError(line, "bad field '" + text + "'");
    return v;
}

} // namespace

std::string format_row(const RunRecord& r)
{
    return std::to_string(r.level) + '\t' + std::to_string(r.total_dofs_coarse) + '\t' +
           std::to_string(r.free_dofs_coarse) + '\t' + real(r.error_l2) + '\t' + real(r.error_energy) + '\t' +
           real(r.estimator) + '\t' + real(r.infsup);
}

std::vector<TableRow> parse_table(std::istream& in)
{
    std::vector<TableRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (lineno == 1) {
            if (line != table_header)
                throw TableParseError(lineno, "unexpected header");
            continue;
        }
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, '\t'))
            fields.push_back(f);
        if (fields.size() != 7)
            throw TableParseError(lineno, "expected 7 fields, found " + std::to_string(fields.size()));
        TableRow r;
        const double level = parse_field(fields[0], lineno);
        if (std::isnan(level) || level != std::floor(level))
            throw TableParseError(lineno, "level must be an integer");
        r.level = static_cast<int>(level);
        r.nv = parse_field(fields[1], lineno);
        r.ndof = parse_field(fields[2], lineno);
        r.err_l2 = parse_field(fields[3], lineno);
        r.err_energy = parse_field(fields[4], lineno);
        r.estimator = parse_field(fields[5], lineno);
        r.infsup = parse_field(fields[6], lineno);
        rows.push_back(r);
    }
    if (lineno == 0)
        throw TableParseError(1, "empty table");
    return rows;
}

std::vector<TableRow> load_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return parse_table(in);
}

} // namespace lsfem::cli
