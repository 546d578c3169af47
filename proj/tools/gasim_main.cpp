// gasim — run the parallel-hardware GA model from presets, config files or
// ROM dumps. Exit codes: 0 success, 1 usage/config error, 2 runtime error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gasim/experiment.hpp"

namespace {

struct Flags {
    std::string config_file;
    std::string function;
    int n = 0;
    int m = 0;
    int k = 0;
    double mr = -1.0;
    std::string mode;
    std::uint64_t seed = 0;
    int runs = 0;
    std::string trace_dir;
    std::string rom_dir;
    bool dump_roms = false;
    bool check_oracle = false;
    bool no_trace = false;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bit-exact software model of a fully parallel hardware genetic algorithm"};
    app.get_formatter()->column_width(28);

    Flags f;
    app.add_option("--config", f.config_file, "key = value configuration file");
    auto* o_function = app.add_option("--function", f.function, "fitness preset: f1, f2 or f3");
    auto* o_n = app.add_option("--n", f.n, "population size (power of two >= 4)");
    auto* o_m = app.add_option("--m", f.m, "chromosome bits (even, 4..32)");
    auto* o_k = app.add_option("--k", f.k, "generations per run");
    auto* o_mr = app.add_option("--mr", f.mr, "mutation rate in [0, 1]");
    auto* o_mode = app.add_option("--mode", f.mode, "minimize or maximize");
    auto* o_seed = app.add_option("--seed", f.seed, "64-bit master seed");
    auto* o_runs = app.add_option("--runs", f.runs, "independent runs (seed + r)");
    auto* o_trace = app.add_option("--trace-dir", f.trace_dir, "output directory for traces");
    auto* o_rom = app.add_option("--rom-dir", f.rom_dir, "load ROM dumps instead of a preset");
    app.add_flag("--dump-roms", f.dump_roms, "write ROM dumps next to the traces");
    app.add_flag("--check-oracle", f.check_oracle,
                 "compute the exhaustive optimum and first-hit statistics");
    app.add_flag("--no-trace", f.no_trace, "skip per-run CSV traces");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        gasim::ExperimentSpec spec;
        if (!f.config_file.empty()) spec = gasim::parse_config_file(f.config_file);

        // flags override file values
        if (*o_function) gasim::apply_config_key(spec, "function", f.function);
        if (*o_n) gasim::apply_config_key(spec, "n", std::to_string(f.n));
        if (*o_m) gasim::apply_config_key(spec, "m", std::to_string(f.m));
        if (*o_k) gasim::apply_config_key(spec, "k", std::to_string(f.k));
        if (*o_mr) gasim::apply_config_key(spec, "mr", std::to_string(f.mr));
        if (*o_mode) gasim::apply_config_key(spec, "mode", f.mode);
        if (*o_seed) spec.base.master_seed = f.seed;
        if (*o_runs) gasim::apply_config_key(spec, "runs", std::to_string(f.runs));
        if (*o_trace) spec.out_dir = f.trace_dir;
        if (*o_rom) spec.rom_dir = f.rom_dir;
        if (f.dump_roms) spec.dump_roms = true;
        if (f.check_oracle) spec.check_oracle = true;
        if (f.no_trace) spec.emit_trace = false;

        gasim::resolve_tables(spec);
        const gasim::ExperimentResult result = gasim::run_experiment(spec);
        gasim::write_summary(std::cout, spec, result);
        return 0;
    } catch (const gasim::ConfigError& e) {
        std::fprintf(stderr, "gasim: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "gasim: %s\n", e.what());
        return 2;
    }
}
