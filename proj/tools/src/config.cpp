#include "lsfem_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <tuple>

#include <lsfem/problems.hpp>

namespace lsfem::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text)
{
    T value{};
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError(key, "not a number: '" + text + "'");
    return value;
}

} // namespace

std::pair<int, int> default_initial_mesh(const std::string& problem)
{
    if (problem == "poisson_lshape")
        return {1, 1};
    if (problem == "heat_smooth")
        return {2, 4};
    // Square cells put every diagonal on a characteristic t = +-x + c, where
    // gradient jumps carry no wave residual and the estimator goes blind.
    if (problem == "wave_smooth")
        return {5, 14};
    if (problem == "wave_incompatible")
        return {2, 3};
    // coarser grids let every quadrature point miss the thin source strip
    if (problem == "heat_discontinuous")
        return {8, 8};
    return {2, 2};
}

RunConfig parse_config(std::istream& in)
{
    RunConfig cfg;
    bool theta_set = false;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!seen.insert(key).second)
            throw ConfigError(key, "given twice");

        if (key == "name") {
            if (val.empty() || val.find_first_of("/\\") != std::string::npos)
                throw ConfigError(key, "must be a nonempty file stem");
            cfg.name = val;
        } else if (key == "problem") {
            const auto names = problem_names();
            if (std::find(names.begin(), names.end(), val) == names.end())
                throw ConfigError(key, "unknown problem '" + val + "'");
            cfg.problem = val;
        } else if (key == "mode") {
            if (val == "uniform")
                cfg.mode = Mode::Uniform;
            else if (val == "adaptive")
                cfg.mode = Mode::Adaptive;
            else
                throw ConfigError(key, "expected uniform or adaptive");
        } else if (key == "theta") {
            cfg.study.theta = parse_number<double>(key, val);
            if (!(cfg.study.theta > 0.0 && cfg.study.theta <= 1.0))
                throw ConfigError(key, "must lie in (0, 1]");
            theta_set = true;
        } else if (key == "refine_ratio") {
            if (val == "half")
                cfg.study.refine_ratio = RefineRatio::Half;
            else if (val == "quarter")
                cfg.study.refine_ratio = RefineRatio::Quarter;
            else
                throw ConfigError(key, "expected half or quarter");
        } else if (key == "max_levels") {
            cfg.study.max_levels = parse_number<int>(key, val);
            if (cfg.study.max_levels < 1)
                throw ConfigError(key, "must be at least 1");
        } else if (key == "max_dofs") {
            cfg.study.max_dofs = parse_number<long>(key, val);
            if (cfg.study.max_dofs < 1)
                throw ConfigError(key, "must be at least 1");
        } else if (key == "initial_mesh") {
            const auto x = val.find('x');
            if (x == std::string::npos)
                throw ConfigError(key, "expected NxM");
            cfg.nx = parse_number<int>(key, val.substr(0, x));
            cfg.ny = parse_number<int>(key, val.substr(x + 1));
            if (cfg.nx < 1 || cfg.ny < 1)
                throw ConfigError(key, "grid dimensions must be positive");
        } else if (key == "outputs") {
            cfg.table = false;
            std::stringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (item == "table")
                    cfg.table = true;
                else if (item == "svg_meshes")
                    cfg.svg_meshes = true;
                else if (item == "infsup")
                    cfg.study.compute_infsup = true;
                else if (!item.empty())
                    throw ConfigError(key, "unknown output '" + item + "'");
            }
        } else {
            throw ConfigError(key, "unknown key");
        }
    }
    if (cfg.problem.empty())
        throw ConfigError("problem", "missing");
    if (cfg.name.empty())
        cfg.name = cfg.problem;
    if (!theta_set)
        cfg.study.theta = problem_by_name(cfg.problem).default_theta;
    if (cfg.nx == 0)
        std::tie(cfg.nx, cfg.ny) = default_initial_mesh(cfg.problem);
    return cfg;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open '" + path + "'");
    return parse_config(in);
}

} // namespace lsfem::cli
