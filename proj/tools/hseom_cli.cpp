// hseom_cli.cpp - command-line front end for the experiment runner

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "hseom/config.hpp"
#include "hseom/runner.hpp"

namespace {

struct Flags {
    std::string config;
    std::string out;
    int workers = 0;
    bool deterministic = false;
};

void add_flags(CLI::App* sub, Flags& f)
{
    sub->add_option("--config", f.config, "configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", f.out, "output directory (overrides run.output)");
    sub->add_option("--workers", f.workers, "worker threads (overrides run.workers)")->check(CLI::Range(1, 1024));
    sub->add_flag("--deterministic", f.deterministic, "fixed worker partitioning for bitwise-identical output");
}

// One key = value record per line, on stderr and next to the artifacts.
void report_error(const std::exception& e, const std::string& out_dir)
{
    const int code = hseom::exit_code_for(e);
    std::ostringstream rec;
    rec << "status = error\ncode = " << code << "\nkind = " << hseom::error_kind(e) << "\nmessage = " << e.what()
        << '\n';
    if (const auto* r = dynamic_cast<const hseom::ResourceError*>(&e)) rec << "requested = " << r->requested() << '\n';
    std::cerr << rec.str();
    if (!out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        std::ofstream(std::filesystem::path(out_dir) / "error.txt") << rec.str();
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hierarchical Schroedinger equations of motion: open quantum dynamics runner"};
    app.require_subcommand(1);
    Flags flags;
    const std::pair<const char*, const char*> commands[] = {
        {"bath-fit", "expand the bath correlation function and check it against quadrature"},
        {"respond", "first-order response function and its spectrum"},
        {"anneal", "p-spin quantum annealing populations"},
        {"rdm", "reduced density matrix trajectory"},
        {"validate", "oracle-versus-engine residual table"},
        {"preflight", "resource estimate without running"},
    };
    for (const auto& [name, help] : commands) add_flags(app.add_subcommand(name, help), flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help requests exit 0; malformed command lines count as configuration errors.
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    std::string out_dir = flags.out;
    try {
        hseom::RunConfig cfg = flags.config.empty() ? hseom::RunConfig{} : hseom::load_config(flags.config);
        if (command != "preflight") cfg.experiment = hseom::experiment_from_name(command);
        if (!flags.out.empty()) cfg.output = flags.out;
        if (flags.workers > 0) cfg.workers = flags.workers;
        if (flags.deterministic) cfg.deterministic = true;
        out_dir = cfg.output;
        if (cfg.deterministic) omp_set_dynamic(0);

        if (command == "preflight") {
            std::cout << "experiment = " << hseom::experiment_name(cfg.experiment) << '\n'
                      << hseom::preflight(cfg).to_string();
            return 0;
        }
        return hseom::run_experiment(cfg, std::cout);
    } catch (const std::exception& e) {
        report_error(e, command == "preflight" ? std::string{} : out_dir);
        return hseom::exit_code_for(e);
    }
}
