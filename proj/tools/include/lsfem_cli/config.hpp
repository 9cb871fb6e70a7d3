#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>

#include <lsfem/adapt.hpp>

namespace lsfem::cli {

enum class Mode { Uniform, Adaptive };

struct RunConfig {
    std::string name;
    std::string problem;
    Mode mode = Mode::Uniform;
    AdaptiveConfig study;
    int nx = 0; ///< 0 selects the problem's default initial mesh
    int ny = 0;
    bool table = true;
    bool svg_meshes = false;
};

/// Config problem naming the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field))
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Flat key=value lines, `#` starts a comment. Keys: name, problem, mode,
/// theta, refine_ratio, max_levels, max_dofs, initial_mesh (NxM), outputs
/// (comma list of table, svg_meshes, infsup).
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

/// Initial grid used when the config leaves initial_mesh out.
std::pair<int, int> default_initial_mesh(const std::string& problem);

} // namespace lsfem::cli
