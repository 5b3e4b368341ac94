#include "rds/config.hpp"
#include "rds/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
    using namespace rds::cli;

    CLI::App app{"Random circle-map synchronisation experiments"};
    std::string cmd;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    int threads = 0;

    std::string commands;
    for (const auto& c : known_commands()) commands += (commands.empty() ? "" : ", ") + c;
    app.add_option("command", cmd, "One of: " + commands)->required()->check(CLI::IsMember(known_commands()));
    app.add_option("--config", config_path, "Experiment config file (key = value lines)");
    app.add_option("--seed", seed, "Seed; overrides the config file and RDS_SYNC_SEED");
    app.add_option("--out", out, "Output directory; overrides the config's output key");
    app.add_option("--threads", threads, "Worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    ExperimentConfig config;
    if (!config_path.empty()) {
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            std::cerr << "I/O error: cannot read " << config_path << '\n';
            return kExitIo;
        }
        std::ostringstream text;
        text << in.rdbuf();
        try {
            config = parse_config(text.str());
        } catch (const ConfigError& e) {
            std::cerr << "config error: " << e.what() << '\n';
            return kExitConfig;
        }
    }

    RunOptions opts;
    opts.out_dir = out;
    opts.seed = seed;
    opts.threads = threads;
    for (int i = 0; i < argc; ++i) opts.command_line += (i ? " " : "") + std::string(argv[i]);
    return run(cmd, std::move(config), opts);
}
