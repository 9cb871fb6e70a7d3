#include "lsfem_cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include <lsfem/problems.hpp>
#include <lsfem/rates.hpp>

namespace lsfem::cli {

namespace fs = std::filesystem;

fs::path output_dir()
{
    const char* dir = std::getenv("LSFEM_OUTPUT_DIR");
    return (dir && *dir) ? fs::path(dir) : fs::current_path();
}

namespace {

TableRow to_row(const RunRecord& r)
{
    const double nan = std::nan("");
    return {r.level,
            static_cast<double>(r.total_dofs_coarse),
            static_cast<double>(r.free_dofs_coarse),
            r.error_l2.value_or(nan),
            r.error_energy.value_or(nan),
            r.estimator,
            r.infsup.value_or(nan)};
}

std::optional<double> column_slope(std::span<const TableRow> rows, double TableRow::*col)
{
    std::vector<double> n;
    std::vector<double> e;
    for (const auto& r : rows) {
        if (std::isfinite(r.*col) && r.*col > 0.0) {
            n.push_back(r.nv);
            e.push_back(r.*col);
        }
    }
    if (n.size() < 2)
        return std::nullopt;
    try {
        return tail_slope(n, e);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string fmt(const std::optional<double>& v)
{
    if (!v)
        return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", *v);
    return buf;
}

bool column_complete(std::span<const TableRow> rows, double TableRow::*col)
{
    for (const auto& r : rows)
        if (!(std::isfinite(r.*col) && r.*col > 0.0))
            return false;
    return rows.size() >= 2;
}

} // namespace

RateSummary summarize(std::span<const TableRow> rows)
{
    return {column_slope(rows, &TableRow::err_l2), column_slope(rows, &TableRow::err_energy),
            column_slope(rows, &TableRow::estimator)};
}

int run(const RunConfig& config, const fs::path& dir, std::ostream& out, std::ostream& err)
{
    const ProblemDef problem = problem_by_name(config.problem);
    const TriMesh initial = make_initial_mesh(problem, config.nx, config.ny);
    fs::create_directories(dir);

    std::ofstream table;
    if (config.table) {
        table.open(dir / (config.name + ".dat"));
        if (!table) {
            err << "cannot write " << (dir / (config.name + ".dat")).string() << '\n';
            return 1;
        }
        table << table_header << '\n' << std::flush;
    }
    std::vector<TableRow> rows;
    auto observer = [&](const LevelView& v) {
        rows.push_back(to_row(v.record));
        if (config.table)
            table << format_row(v.record) << '\n' << std::flush;
        if (config.svg_meshes) {
            std::ofstream svg(dir / (config.name + "_L" + std::to_string(v.record.level) + ".svg"));
            write_svg(v.coarse, svg);
        }
        out << "level " << v.record.level << ": nv=" << v.record.total_dofs_coarse
            << " estimator=" << v.record.estimator << '\n';
    };

    const StudyResult result = config.mode == Mode::Adaptive
                                   ? adaptive_solve(problem, initial, config.study, observer)
                                   : uniform_solve(problem, initial, config.study, observer);

    const RateSummary s = summarize(rows);
    out << "rates over the last three levels (slope vs nv):\n"
        << "  errL2_u  " << fmt(s.err_l2) << '\n'
        << "  errH1_u  " << fmt(s.err_energy) << '\n'
        << "  L2_dxph  " << fmt(s.estimator) << '\n';
    if (result.error) {
        err << "solver failure at " << *result.error << '\n';
        return 1;
    }
    return 0;
}

CompareReport compare(std::span<const TableRow> a, std::span<const TableRow> b)
{
    CompareReport rep;
    double TableRow::*col = &TableRow::estimator;
    rep.column = "L2_dxph";
    if (column_complete(a, &TableRow::err_energy) && column_complete(b, &TableRow::err_energy)) {
        col = &TableRow::err_energy;
        rep.column = "errH1_u";
    } else if (!column_complete(a, col) || !column_complete(b, col)) {
        throw std::runtime_error("compare: tables need two or more rows with positive values");
    }
    auto side = [col](std::span<const TableRow> t, double target) {
        std::vector<double> n;
        std::vector<double> e;
        for (const auto& r : t) {
            n.push_back(r.nv);
            e.push_back(r.*col);
        }
        CompareSide s;
        s.slope = tail_slope(n, e);
        s.final_error = e.back();
        s.dofs_to_reach_other = dofs_to_reach(n, e, target);
        return s;
    };
    rep.a = side(a, b.back().*col);
    rep.b = side(b, a.back().*col);
    return rep;
}

void print_report(const CompareReport& r, std::ostream& out)
{
    char buf[256];
    out << "column " << r.column << '\n';
    std::snprintf(buf, sizeof buf, "A: slope %.4f, final error %.3e, dofs to reach B's final error %.1f\n",
                  r.a.slope, r.a.final_error, r.a.dofs_to_reach_other);
    out << buf;
    std::snprintf(buf, sizeof buf, "B: slope %.4f, final error %.3e, dofs to reach A's final error %.1f\n",
                  r.b.slope, r.b.final_error, r.b.dofs_to_reach_other);
    out << buf;
}

} // namespace lsfem::cli
