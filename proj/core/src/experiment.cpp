#include "gasim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gasim {

namespace {

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "not an integer: '" + value + "'");
    }
}

std::int64_t parse_int64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "not an integer: '" + value + "'");
    }
}

std::uint64_t parse_uint64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "not an unsigned integer: '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "not a number: '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes") return true;
    if (value == "0" || value == "false" || value == "no") return false;
    throw ConfigError(key, "not a boolean: '" + value + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

void apply_config_key(ExperimentSpec& spec, const std::string& key, const std::string& value) {
    if (key == "function") {
        const auto p = preset_from_name(value);
        if (!p) throw ConfigError("function", "unknown preset '" + value + "' (want f1, f2 or f3)");
        spec.function = *p;
    } else if (key == "n") {
        spec.base.n = parse_int(key, value);
    } else if (key == "m") {
        spec.base.m = parse_int(key, value);
        try {
            validate_word_width(spec.base.m);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("m", e.what());
        }
    } else if (key == "k") {
        spec.base.k = parse_int(key, value);
    } else if (key == "mr") {
        spec.base.mutation_rate = parse_double(key, value);
    } else if (key == "mode") {
        if (value == "minimize") spec.base.mode = SelectionMode::minimize;
        else if (value == "maximize") spec.base.mode = SelectionMode::maximize;
        else throw ConfigError("mode", "want 'minimize' or 'maximize', got '" + value + "'");
    } else if (key == "seed") {
        spec.base.master_seed = parse_uint64(key, value);
    } else if (key == "runs") {
        spec.runs = parse_int(key, value);
        if (spec.runs < 1) throw ConfigError("runs", "must be >= 1");
    } else if (key == "single_variable") {
        spec.base.single_variable = parse_bool(key, value);
    } else if (key == "frac_bits") {
        spec.formats.frac_bits = parse_int(key, value);
    } else if (key == "fitness_bits") {
        spec.formats.fitness_bits = parse_int(key, value);
        spec.formats.value_bits = spec.formats.fitness_bits;
    } else if (key == "rom_dir") {
        spec.rom_dir = value;
    } else if (key == "rom_cap") {
        spec.rom_cap = parse_int64(key, value);
        if (spec.rom_cap < 1) throw ConfigError("rom_cap", "must be >= 1");
    } else if (key == "out_dir") {
        spec.out_dir = value;
    } else if (key == "sync_val") {
        spec.base.sync_val = parse_int(key, value);
    } else {
        throw ConfigError(key, "unknown configuration key");
    }
}

ExperimentSpec parse_config_file(std::istream& in) {
    ExperimentSpec spec;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno), "expected 'key = value'");
        apply_config_key(spec, trim(trimmed.substr(0, eq)), trim(trimmed.substr(eq + 1)));
    }
    return spec;
}

ExperimentSpec parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path.string());
    return parse_config_file(in);
}

void resolve_tables(ExperimentSpec& spec) {
    if (spec.function && !spec.rom_dir.empty())
        throw ConfigError("function", "give either a function preset or rom_dir, not both");
    if (spec.function) {
        const Preset p = *spec.function;
        spec.base.tables = std::make_shared<const FfmTables>(
            build_preset_tables(p, spec.base.m, spec.formats, spec.rom_cap));
        spec.base.single_variable = preset_single_variable(p);
        spec.base.hi_map = preset_hi_map(p);
        spec.base.lo_map = preset_lo_map(p);
    } else if (!spec.rom_dir.empty()) {
        spec.base.tables =
            std::make_shared<const FfmTables>(load_rom_files(spec.rom_dir, spec.formats));
        if (spec.base.tables->chromosome_bits() != spec.base.m)
            spec.base.m = spec.base.tables->chromosome_bits();
    } else {
        throw ConfigError("function", "no fitness function: set a preset or rom_dir");
    }
}

void dump_rom_files(const FfmTables& tables, const std::filesystem::path& dir) {
    if (tables.gamma.kind == GammaKind::quantized_eval)
        throw std::runtime_error(
            "dump_rom_files: gamma stage quantizes on the fly (window exceeds rom_cap); "
            "reduce m or raise rom_cap to materialize a table");
    std::filesystem::create_directories(dir);
    const auto write = [&](const RomTable& t, const char* name) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
        dump_rom(t, out);
    };
    write(tables.alpha, "alpha.rom");
    write(tables.beta, "beta.rom");
    if (tables.gamma.kind == GammaKind::table) write(tables.gamma.table, "gamma.rom");
}

FfmTables load_rom_files(const std::filesystem::path& dir, const TableFormats& formats) {
    const auto read = [&](const char* name) {
        std::ifstream in(dir / name, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open " + (dir / name).string());
        return load_rom(in);
    };
    FfmTables t;
    t.alpha = read("alpha.rom");
    t.beta = read("beta.rom");
    t.delta_fmt = {t.alpha.out_fmt.total_bits + 1, t.alpha.out_fmt.frac_bits};
    if (std::filesystem::exists(dir / "gamma.rom")) {
        t.gamma.kind = GammaKind::table;
        t.gamma.table = read("gamma.rom");
        t.fitness_fmt = t.gamma.table.out_fmt;
    } else {
        t.gamma = gamma_passthrough();
        t.fitness_fmt = formats.fitness_fmt();
    }
    validate_tables(t);
    return t;
}

std::optional<int> first_hit_generation(const RunTrace& trace, FitnessValue target,
                                        SelectionMode mode) {
    for (const GenerationRecord& r : trace.records) {
        const bool hit = mode == SelectionMode::minimize ? r.best_fitness <= target + 1
                                                         : r.best_fitness >= target - 1;
        if (hit) return static_cast<int>(r.generation);
    }
    return std::nullopt;
}

double median_with_misses(const std::vector<std::optional<int>>& hits, int miss_value) {
    std::vector<int> v;
    v.reserve(hits.size());
    for (const auto& h : hits) v.push_back(h.value_or(miss_value));
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

ExperimentResult run_experiment(const ExperimentSpec& spec_in) {
    ExperimentSpec spec = spec_in;
    if (!spec.base.tables) resolve_tables(spec);
    validate_config(spec.base);

    const std::filesystem::path out_dir(spec.out_dir);
    if (spec.emit_trace || spec.emit_summary) std::filesystem::create_directories(out_dir);
    if (spec.dump_roms) dump_rom_files(*spec.base.tables, out_dir / "roms");

    ExperimentResult result;
    if (spec.check_oracle)
        result.oracle = exhaustive_optimum(*spec.base.tables, spec.base.mode,
                                           spec.base.single_variable, spec.base.m);

    std::vector<std::optional<int>> hits;
    double total_wall = 0.0;
    std::uint64_t total_gens = 0;
    for (int r = 0; r < spec.runs; ++r) {
        GaConfig cfg = spec.base;
        cfg.master_seed = spec.base.master_seed + static_cast<std::uint64_t>(r);
        const RunTrace trace = run(cfg);
        total_wall += trace.wall_seconds;
        total_gens += static_cast<std::uint64_t>(cfg.k);

        RunSummary rs;
        rs.run_id = r;
        rs.seed = cfg.master_seed;
        rs.total_cycles = trace.total_cycles;
        rs.best_fitness = trace.records.front().best_fitness;
        for (const GenerationRecord& rec : trace.records) {
            const bool better = cfg.mode == SelectionMode::minimize
                                    ? rec.best_fitness < rs.best_fitness
                                    : rec.best_fitness > rs.best_fitness;
            if (better) rs.best_fitness = rec.best_fitness;
        }
        if (result.oracle)
            rs.first_hit = first_hit_generation(trace, result.oracle->best_fitness, cfg.mode);
        hits.push_back(rs.first_hit);
        result.runs.push_back(rs);

        if (spec.emit_trace) {
            const auto path = out_dir / ("run_" + std::to_string(r) + ".csv");
            std::ofstream out(path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write " + path.string());
            write_trace_csv(out, r, trace);
        }
    }

    if (result.oracle) {
        for (const auto& h : hits) result.hits += h.has_value() ? 1 : 0;
        result.hit_rate = static_cast<double>(result.hits) / spec.runs;
        result.median_first_hit = median_with_misses(hits, spec.base.k + 1);
    }
    result.generations_per_second =
        total_wall > 0.0 ? static_cast<double>(total_gens) / total_wall : 0.0;

    if (spec.emit_summary) {
        const auto path = out_dir / "summary.txt";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        write_summary(out, spec, result);
    }
    return result;
}

void write_summary(std::ostream& out, const ExperimentSpec& spec, const ExperimentResult& result) {
    const GaConfig& cfg = spec.base;
    const int frac = cfg.tables->fitness_fmt.frac_bits;
    char buf[64];
    const auto fmt_fitness = [&](FitnessValue v) {
        std::snprintf(buf, sizeof buf, "%.*f", frac, std::ldexp(static_cast<double>(v), -frac));
        return std::string(buf);
    };

    out << "function " << (spec.function ? preset_name(*spec.function) : "rom:" + spec.rom_dir)
        << "\n";
    out << "mode " << (cfg.mode == SelectionMode::minimize ? "minimize" : "maximize") << "\n";
    out << "n " << cfg.n << "\n";
    out << "m " << cfg.m << "\n";
    out << "k " << cfg.k << "\n";
    out << "mr " << cfg.mutation_rate << "\n";
    out << "mutated_per_generation " << cfg.mutated_per_generation() << "\n";
    out << "sync_val " << cfg.sync_val << "\n";
    out << "seed " << cfg.master_seed << "\n";
    out << "runs " << spec.runs << "\n";
    out << "single_variable " << (cfg.single_variable ? 1 : 0) << "\n";
    if (result.oracle) {
        const OptimumReport& o = *result.oracle;
        out << "oracle_best " << fmt_fitness(o.best_fitness) << " word ";
        std::snprintf(buf, sizeof buf, "%0*x", (cfg.m + 3) / 4, o.best_word);
        out << buf << " evaluations " << o.evaluations << "\n";
    }
    for (const RunSummary& rs : result.runs) {
        out << "run " << rs.run_id << " seed " << rs.seed << " first_hit "
            << (rs.first_hit ? std::to_string(*rs.first_hit) : "-") << " best "
            << fmt_fitness(rs.best_fitness) << " cycles " << rs.total_cycles << "\n";
    }
    if (result.oracle) {
        out << "hits " << result.hits << "/" << spec.runs << "\n";
        std::snprintf(buf, sizeof buf, "%.4f", result.hit_rate);
        out << "hit_rate " << buf << "\n";
        std::snprintf(buf, sizeof buf, "%.1f", result.median_first_hit);
        out << "median_first_hit " << buf << "\n";
    }
    out << "total_cycles_per_run " << (result.runs.empty() ? 0 : result.runs.front().total_cycles)
        << "\n";
    std::snprintf(buf, sizeof buf, "%.0f", result.generations_per_second);
    out << "wall_generations_per_second " << buf << "\n";
}

} // namespace gasim
