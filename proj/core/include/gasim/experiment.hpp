#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gasim/engine.hpp"
#include "gasim/oracle.hpp"
#include "gasim/presets.hpp"

namespace gasim {

// A batch of independent runs of one configuration. Run r in [0, runs) uses
// master_seed + r, so every run is individually reproducible.
struct ExperimentSpec {
    GaConfig base;
    std::optional<Preset> function;
    std::string rom_dir;         // load alpha/beta(/gamma) dumps instead of a preset
    int runs = 1;
    std::string out_dir = ".";
    bool emit_trace = true;
    bool emit_summary = true;
    bool dump_roms = false;
    bool check_oracle = false;
    TableFormats formats;
    std::int64_t rom_cap = kDefaultGammaCap;
};

/// Applies one `key = value` setting; throws ConfigError on unknown keys or
/// malformed values. Keys: function, n, m, k, mr, mode, seed, runs,
/// single_variable, frac_bits, fitness_bits, rom_dir, rom_cap, out_dir.
void apply_config_key(ExperimentSpec& spec, const std::string& key, const std::string& value);

/// Parses a line-oriented `key = value` config file ('#' starts a comment).
ExperimentSpec parse_config_file(std::istream& in);
ExperimentSpec parse_config_file(const std::filesystem::path& path);

/// Builds (preset) or loads (rom_dir) the tables and fills the domain maps;
/// exactly one source must be configured.
void resolve_tables(ExperimentSpec& spec);

/// Writes alpha.rom / beta.rom (and gamma.rom unless the stage is a
/// passthrough) in the dump format. Throws when gamma quantizes on the fly:
/// there is no table to materialize.
void dump_rom_files(const FfmTables& tables, const std::filesystem::path& dir);

/// Loads tables dumped by dump_rom_files; a missing gamma.rom means passthrough.
FfmTables load_rom_files(const std::filesystem::path& dir, const TableFormats& formats);

struct RunSummary {
    int run_id = 0;
    std::uint64_t seed = 0;
    std::optional<int> first_hit; // 1-based generation, empty when never hit
    FitnessValue best_fitness = 0;
    std::uint64_t total_cycles = 0;
};

struct ExperimentResult {
    std::vector<RunSummary> runs;
    std::optional<OptimumReport> oracle;
    int hits = 0;
    double hit_rate = 0.0;
    double median_first_hit = 0.0; // misses count as beyond the last generation
    double generations_per_second = 0.0;
};

/// First generation whose best fitness is within one fitness LSB of the
/// target under the mode (at or better than target-minus-one-LSB when
/// maximizing, at or below target-plus-one-LSB when minimizing).
std::optional<int> first_hit_generation(const RunTrace& trace, FitnessValue target,
                                        SelectionMode mode);

double median_with_misses(const std::vector<std::optional<int>>& hits, int miss_value);

/// Executes the batch: one CSV trace per run plus a summary document.
/// Returns the in-memory result for programmatic use.
ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_summary(std::ostream& out, const ExperimentSpec& spec, const ExperimentResult& result);

} // namespace gasim
