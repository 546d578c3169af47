#include "gasim/engine.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "gasim/ffm.hpp"

namespace gasim {

void validate_config(const GaConfig& cfg) {
    if (cfg.n < 4 || !std::has_single_bit(static_cast<std::uint32_t>(cfg.n)))
        throw ConfigError("n", "population size must be a power of two >= 4");
    if (cfg.m < kMinWordBits || cfg.m > kMaxWordBits || cfg.m % 2 != 0)
        throw ConfigError("m", "chromosome width must be even and in [4, 32]");
    if (cfg.k < 1)
        throw ConfigError("k", "generation count must be >= 1");
    if (!(cfg.mutation_rate >= 0.0 && cfg.mutation_rate <= 1.0))
        throw ConfigError("mr", "mutation rate must be in [0, 1]");
    if (cfg.sync_val < 0 || cfg.sync_val > 3)
        throw ConfigError("sync_val", "must be a 2-bit value");
    if (!cfg.tables)
        throw ConfigError("tables", "no fitness tables configured");
    validate_tables(*cfg.tables);
    if (cfg.tables->chromosome_bits() != cfg.m)
        throw ConfigError("m", "tables were built for m = " +
                                   std::to_string(cfg.tables->chromosome_bits()));
}

GaState init_population(const GaConfig& cfg) {
    validate_config(cfg);
    const int n = cfg.n;
    const int p = cfg.mutated_per_generation();
    const std::size_t count =
        static_cast<std::size_t>(n) + 2 * n + n + static_cast<std::size_t>(p);
    const SeedPlan plan = expand_seeds(cfg.master_seed, count);

    GaState s;
    s.population.reserve(n);
    std::size_t slot = 0;
    for (int j = 0; j < n; ++j)
        s.population.push_back(top_bits(plan.seeds[slot++], cfg.m));
    const auto take_bank = [&](std::vector<Lfsr32>& bank, int units) {
        bank.reserve(units);
        for (int j = 0; j < units; ++j) bank.emplace_back(plan.seeds[slot++]);
    };
    take_bank(s.sel_first, n);
    take_bank(s.sel_second, n);
    take_bank(s.cross_hi, n / 2);
    take_bank(s.cross_lo, n / 2);
    take_bank(s.mut, p);
    return s;
}

bool sync_enable(int counter, int sync_val) {
    return counter == sync_val;
}

GaState step_generation(const GaState& s, const GaConfig& cfg, GenerationRecord* record,
                        DrawLog* log) {
    const int n = cfg.n;
    const FfmTables& tables = *cfg.tables;

    std::vector<FitnessValue> fitness(n);
    for (int j = 0; j < n; ++j) fitness[j] = ffm_evaluate(s.population[j], tables);

    GaState next = s;
    const auto draw = [&](Lfsr32& unit) {
        const std::uint32_t v = unit.next();
        if (log) log->values.push_back(v);
        return v;
    };

    std::vector<Word> selected(n);
    for (int j = 0; j < n; ++j) {
        const std::uint32_t r1 = draw(next.sel_first[j]);
        const std::uint32_t r2 = draw(next.sel_second[j]);
        selected[j] = tournament(s.population, fitness, r1, r2, cfg.mode);
    }

    std::vector<Word> offspring(n);
    for (int i = 0; i < n / 2; ++i) {
        const std::uint32_t rp = draw(next.cross_hi[i]);
        const std::uint32_t rq = draw(next.cross_lo[i]);
        const auto [z1, z2] = crossover_pair(selected[2 * i], selected[2 * i + 1], rp, rq, cfg.m);
        offspring[2 * i] = z1;
        offspring[2 * i + 1] = z2;
    }

    const int p = cfg.mutated_per_generation();
    for (int v = 0; v < p; ++v) {
        const std::uint32_t rm = draw(next.mut[v]);
        offspring[v] = mutate(offspring[v], mutation_word(rm, cfg.m));
    }

    if (record) {
        int best = 0;
        std::int64_t sum = 0;
        for (int j = 0; j < n; ++j) {
            sum += fitness[j];
            const bool better = cfg.mode == SelectionMode::minimize
                                    ? fitness[j] < fitness[best]
                                    : fitness[j] > fitness[best];
            if (better) best = j;
        }
        record->generation = s.generation + 1;
        record->best_fitness = fitness[best];
        record->best_word = s.population[best];
        record->mean_fitness =
            std::ldexp(static_cast<double>(sum) / n, -tables.fitness_fmt.frac_bits);
    }

    // latch: the new population replaces the registers after sync_val + 1 cycles
    next.population = std::move(offspring);
    int counter = 0;
    while (!sync_enable(counter, cfg.sync_val)) ++counter;
    next.cycle_count = s.cycle_count + static_cast<std::uint64_t>(counter) + 1;
    next.generation = s.generation + 1;
    return next;
}

RunTrace run(const GaConfig& cfg) {
    GaState state = init_population(cfg);
    RunTrace trace;
    trace.config = cfg;
    trace.records.reserve(cfg.k);
    const auto t0 = std::chrono::steady_clock::now();
    for (int k = 0; k < cfg.k; ++k) {
        GenerationRecord rec;
        state = step_generation(state, cfg, &rec);
        trace.records.push_back(rec);
    }
    const auto t1 = std::chrono::steady_clock::now();
    trace.total_cycles = state.cycle_count;
    trace.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    trace.generations_per_second =
        trace.wall_seconds > 0.0 ? static_cast<double>(cfg.k) / trace.wall_seconds : 0.0;
    return trace;
}

namespace {

void print_domain_value(std::ostream& out, const DomainMap& map, Word half, int bits) {
    char buf[40];
    if (map.kind == DomainMap::Kind::twos_complement) {
        std::snprintf(buf, sizeof buf, "%d", half_as_signed(half, bits));
    } else {
        std::snprintf(buf, sizeof buf, "%.10g", map.value(half, bits));
    }
    out << buf;
}

} // namespace

void write_trace_csv(std::ostream& out, int run_id, const RunTrace& trace) {
    const GaConfig& cfg = trace.config;
    const int frac = cfg.tables->fitness_fmt.frac_bits;
    const int hex_digits = (cfg.m + 3) / 4;
    out << "run_id,generation,best_fitness,mean_fitness,best_word_hex,best_px,best_qx\n";
    char buf[64];
    for (const GenerationRecord& r : trace.records) {
        out << run_id << ',' << r.generation << ',';
        std::snprintf(buf, sizeof buf, "%.*f", frac,
                      std::ldexp(static_cast<double>(r.best_fitness), -frac));
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.*f", frac, r.mean_fitness);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%0*x", hex_digits, r.best_word);
        out << buf << ',';
        const auto [hi, lo] = split(r.best_word, cfg.m);
        print_domain_value(out, cfg.hi_map, hi, cfg.half_bits());
        out << ',';
        print_domain_value(out, cfg.lo_map, lo, cfg.half_bits());
        out << '\n';
    }
}

} // namespace gasim
