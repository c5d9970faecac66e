#include <string>

#include <CLI11.hpp>

#include "revlab/cli/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"revival-lab: wave-packet revival simulator for two-oscillator Hamiltonians"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    int threads = 0;

    for (const char* name : {"simulate", "periods", "convergence", "cf", "revival"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "scenario config file")->required();
        sub->add_option("--out", out_dir, "output directory (default: out)");
        sub->add_option("--threads", threads, "worker threads, 0 = auto (default: 0)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();
    return revlab::cli::run_cli(sub, config_path, out_dir, threads);
}
