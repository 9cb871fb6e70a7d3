#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lsfem_cli/commands.hpp"

int main(int argc, char** argv)
{
    using namespace lsfem::cli;

    CLI::App app{"least-squares space-time finite element studies"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "run a convergence study from a key=value config");
    run_cmd->add_option("config", config_path, "config file")->required();

    std::string table_a;
    std::string table_b;
    auto* cmp_cmd = app.add_subcommand("compare", "compare two .dat tables");
    cmp_cmd->add_option("a", table_a, "first table")->required();
    cmp_cmd->add_option("b", table_b, "second table")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*run_cmd) {
        RunConfig cfg;
        try {
            cfg = load_config(config_path);
        } catch (const ConfigError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return 2;
        }
        try {
            return run(cfg, output_dir(), std::cout, std::cerr);
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << '\n';
            return 1;
        }
    }

    try {
        const auto a = load_table(table_a);
        const auto b = load_table(table_b);
        print_report(compare(a, b), std::cout);
    } catch (const TableParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
