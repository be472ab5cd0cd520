#include "qes/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"qes-scatter: Born scattering and invisibility checks for complex potentials"};
    app.require_subcommand(1);

    std::string config;
    std::string out;
    int threads = 0;
    for (const auto& name : qes::cli::kSubcommands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config, "JSON config file")->required();
        sub->add_option("--out", out, "output directory")->required();
        sub->add_option("--threads", threads, "worker threads (0 = OpenMP default)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return qes::cli::run_command(app.get_subcommands().front()->get_name(), config, out, threads);
}
