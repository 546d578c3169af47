#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "gasim/genetic_ops.hpp"
#include "gasim/prng.hpp"
#include "gasim/rom.hpp"

namespace gasim {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what)
        : std::runtime_error("config field '" + field + "': " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Full run configuration. Tables are shared immutable state; population size
// must be a power of two so truncated selection indices address exactly N slots.
struct GaConfig {
    int n = 32;
    int m = 20;
    int k = 100;
    double mutation_rate = 0.01;
    SelectionMode mode = SelectionMode::minimize;
    std::uint64_t master_seed = 1;
    bool single_variable = false;
    int sync_val = 2;
    std::shared_ptr<const FfmTables> tables;

    // echoed into traces and used to decode half-words for reporting
    DomainMap hi_map = DomainMap::twos();
    DomainMap lo_map = DomainMap::twos();

    int half_bits() const { return m / 2; }
    int mutated_per_generation() const { return mutated_count(n, mutation_rate); }
};

/// Throws ConfigError naming the offending field.
void validate_config(const GaConfig& cfg);

// Register and shift-register state between generations. The seed plan fills,
// in order: n population-init words, n "sm1" + n "sm2" selection units,
// n/2 "cmpq1" + n/2 "cmpq2" crossover units, and P mutation units "mm".
struct GaState {
    std::vector<Word> population;
    std::vector<Lfsr32> sel_first;
    std::vector<Lfsr32> sel_second;
    std::vector<Lfsr32> cross_hi;
    std::vector<Lfsr32> cross_lo;
    std::vector<Lfsr32> mut;
    std::uint64_t cycle_count = 0;
    std::uint64_t generation = 0;
};

struct GenerationRecord {
    std::uint64_t generation = 0; // 1-based
    FitnessValue best_fitness = 0;
    double mean_fitness = 0.0;
    Word best_word = 0;
};

struct RunTrace {
    std::vector<GenerationRecord> records;
    std::uint64_t total_cycles = 0;
    double wall_seconds = 0.0;
    double generations_per_second = 0.0;
    GaConfig config; // echo
};

// Raw 32-bit values drawn during a step, in the documented order:
// for each j: (sm1[j], sm2[j]); then for each pair i: (cmpq1[i], cmpq2[i]);
// then for each v < P: mm[v].
struct DrawLog {
    std::vector<std::uint32_t> values;
};

/// Registers filled with the top m bits of successive seed-plan words; every
/// unit seeded with a distinct nonzero 32-bit value. Deterministic in the
/// master seed.
GaState init_population(const GaConfig& cfg);

/// SyncM comparator: the registers latch exactly when the 2-bit counter
/// matches the stored constant, i.e. every sync_val + 1 cycles.
bool sync_enable(int counter, int sync_val);

/// One generation: evaluate, select, cross, mutate, latch. Advances every
/// unit LFSR exactly once and charges sync_val + 1 cycles. Optionally reports
/// the evaluated generation's statistics and appends every draw to `log`.
GaState step_generation(const GaState& s, const GaConfig& cfg,
                        GenerationRecord* record = nullptr, DrawLog* log = nullptr);

/// K generations from a fresh population; pure function of the config.
RunTrace run(const GaConfig& cfg);

// CSV trace: header
//   run_id,generation,best_fitness,mean_fitness,best_word_hex,best_px,best_qx
// with fitness at full fixed-point precision and zero-padded hex words.
void write_trace_csv(std::ostream& out, int run_id, const RunTrace& trace);

} // namespace gasim
