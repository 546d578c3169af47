#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "gasim/experiment.hpp"

using namespace gasim;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "gasim_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ExperimentSpec f2_spec(const fs::path& out, int runs = 1) {
    ExperimentSpec spec;
    apply_config_key(spec, "function", "f2");
    apply_config_key(spec, "n", "8");
    apply_config_key(spec, "m", "12");
    apply_config_key(spec, "k", "20");
    apply_config_key(spec, "seed", "11");
    spec.runs = runs;
    spec.out_dir = out.string();
    return spec;
}

} // namespace

TEST_CASE("config files parse keys, comments and overrides") {
    std::istringstream file("# experiment\n"
                            "function = f3\n"
                            "n = 64\n"
                            "m = 20\n"
                            "k = 100   # default horizon\n"
                            "mr = 0.02\n"
                            "mode = maximize\n"
                            "seed = 42\n"
                            "runs = 3\n"
                            "out_dir = /tmp/somewhere\n");
    ExperimentSpec spec = parse_config_file(file);
    CHECK(spec.function == Preset::f3);
    CHECK(spec.base.n == 64);
    CHECK(spec.base.m == 20);
    CHECK(spec.base.k == 100);
    CHECK(spec.base.mutation_rate == 0.02);
    CHECK(spec.base.mode == SelectionMode::maximize);
    CHECK(spec.base.master_seed == 42);
    CHECK(spec.runs == 3);
    CHECK(spec.out_dir == "/tmp/somewhere");
}

TEST_CASE("config errors name the offending key") {
    ExperimentSpec spec;
    CHECK_THROWS_WITH_AS(apply_config_key(spec, "function", "f9"), doctest::Contains("function"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(apply_config_key(spec, "n", "lots"), doctest::Contains("'n'"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(apply_config_key(spec, "mode", "sideways"), doctest::Contains("mode"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(apply_config_key(spec, "turbo", "1"), doctest::Contains("turbo"),
                         ConfigError);
    std::istringstream bad("n 8\n");
    CHECK_THROWS_AS(parse_config_file(bad), ConfigError);
}

TEST_CASE("resolve_tables wires presets and rejects ambiguous sources") {
    ExperimentSpec none;
    CHECK_THROWS_WITH_AS(resolve_tables(none), doctest::Contains("function"), ConfigError);

    ExperimentSpec both;
    apply_config_key(both, "function", "f2");
    both.rom_dir = "/tmp/x";
    CHECK_THROWS_AS(resolve_tables(both), ConfigError);

    ExperimentSpec f1;
    apply_config_key(f1, "function", "f1");
    apply_config_key(f1, "m", "26");
    apply_config_key(f1, "n", "32");
    resolve_tables(f1);
    CHECK(f1.base.single_variable);
    CHECK(f1.base.tables->gamma.kind == GammaKind::passthrough);
    CHECK(f1.base.lo_map.kind == DomainMap::Kind::twos_complement);

    ExperimentSpec f3;
    apply_config_key(f3, "function", "f3");
    resolve_tables(f3);
    CHECK_FALSE(f3.base.single_variable);
    CHECK(f3.base.lo_map.kind == DomainMap::Kind::affine);
}

TEST_CASE("summary echoes the mutated-per-generation count") {
    const fs::path dir = fresh_dir("summary_echo");
    ExperimentSpec spec = f2_spec(dir);
    apply_config_key(spec, "n", "32");
    apply_config_key(spec, "mr", "0.02");
    resolve_tables(spec);
    const ExperimentResult result = run_experiment(spec);
    std::ostringstream out;
    write_summary(out, spec, result);
    CHECK(out.str().find("mutated_per_generation 1\n") != std::string::npos);
}

TEST_CASE("batches derive per-run seeds and stay byte-reproducible") {
    const fs::path dir_a = fresh_dir("batch_a");
    const fs::path dir_b = fresh_dir("batch_b");
    ExperimentSpec spec = f2_spec(dir_a, 2);
    resolve_tables(spec);
    run_experiment(spec);
    spec.out_dir = dir_b.string();
    run_experiment(spec);

    const std::string a0 = slurp(dir_a / "run_0.csv");
    const std::string a1 = slurp(dir_a / "run_1.csv");
    CHECK(a0 != a1); // seeds differ
    CHECK(a0 == slurp(dir_b / "run_0.csv"));
    CHECK(a1 == slurp(dir_b / "run_1.csv"));

    // run 1 alone reproduces batch slot 1 via seed + 1
    const fs::path dir_c = fresh_dir("batch_c");
    ExperimentSpec single = f2_spec(dir_c, 1);
    apply_config_key(single, "seed", "12");
    resolve_tables(single);
    run_experiment(single);
    const std::string c0 = slurp(dir_c / "run_0.csv");
    // identical apart from the run_id column
    std::string a1_renumbered = a1;
    std::string c0_renumbered = c0;
    for (std::string* s : {&a1_renumbered, &c0_renumbered}) {
        std::istringstream in(*s);
        std::ostringstream out;
        std::string line;
        while (std::getline(in, line)) {
            const auto comma = line.find(',');
            out << (line.substr(0, comma) == "run_id" ? line : "X" + line.substr(comma)) << "\n";
        }
        *s = out.str();
    }
    CHECK(a1_renumbered == c0_renumbered);
}

TEST_CASE("summary statistics are recomputable from the emitted traces") {
    const fs::path dir = fresh_dir("stats");
    ExperimentSpec spec = f2_spec(dir, 4);
    spec.check_oracle = true;
    resolve_tables(spec);
    const ExperimentResult result = run_experiment(spec);
    REQUIRE(result.oracle.has_value());

    const double target = result.oracle->best_fitness_real;
    std::vector<std::optional<int>> recomputed;
    int hits = 0;
    for (int r = 0; r < 4; ++r) {
        std::istringstream in(slurp(dir / ("run_" + std::to_string(r) + ".csv")));
        std::string line;
        std::getline(in, line); // header
        std::optional<int> first;
        while (std::getline(in, line)) {
            std::istringstream fields(line);
            std::string run_id, gen, best;
            std::getline(fields, run_id, ',');
            std::getline(fields, gen, ',');
            std::getline(fields, best, ',');
            if (!first && std::stod(best) <= target + 1.0 / 256.0) first = std::stoi(gen);
        }
        recomputed.push_back(first);
        hits += first.has_value();
        CHECK(first == result.runs[r].first_hit);
    }
    CHECK(hits == result.hits);
    CHECK(result.hit_rate == doctest::Approx(hits / 4.0));
    CHECK(result.median_first_hit ==
          doctest::Approx(median_with_misses(recomputed, spec.base.k + 1)));
}

TEST_CASE("median_with_misses") {
    using OI = std::optional<int>;
    CHECK(median_with_misses({OI{3}, OI{1}, OI{2}}, 99) == 2.0);
    CHECK(median_with_misses({OI{3}, OI{1}}, 99) == 2.0);
    CHECK(median_with_misses({OI{3}, OI{}, OI{1}, OI{}}, 99) == 51.0);
}

TEST_CASE("rom dumps: passthrough presets write two files, tables three") {
    const fs::path dir2 = fresh_dir("roms_f2");
    ExperimentSpec f2 = f2_spec(dir2);
    resolve_tables(f2);
    dump_rom_files(*f2.base.tables, dir2);
    CHECK(fs::exists(dir2 / "alpha.rom"));
    CHECK(fs::exists(dir2 / "beta.rom"));
    CHECK_FALSE(fs::exists(dir2 / "gamma.rom"));

    const fs::path dir3 = fresh_dir("roms_f3");
    const FfmTables f3 = build_preset_tables(Preset::f3, 8);
    dump_rom_files(f3, dir3);
    CHECK(fs::exists(dir3 / "gamma.rom"));

    // the on-the-fly gamma of f3 at m=20 has no table to write
    const FfmTables big = build_preset_tables(Preset::f3, 20);
    CHECK_THROWS_WITH_AS(dump_rom_files(big, fresh_dir("roms_f3_big")),
                         doctest::Contains("rom_cap"), std::runtime_error);
}

TEST_CASE("dumped roms load back to bit-identical runs") {
    const fs::path dir = fresh_dir("rom_roundtrip");
    const FfmTables original = build_preset_tables(Preset::f3, 8);
    dump_rom_files(original, dir);
    const FfmTables loaded = load_rom_files(dir, TableFormats{});
    CHECK(loaded.alpha == original.alpha);
    CHECK(loaded.beta == original.beta);
    REQUIRE(loaded.gamma.kind == GammaKind::table);
    CHECK(loaded.gamma.table == original.gamma.table);

    GaConfig with_original;
    with_original.n = 8;
    with_original.m = 8;
    with_original.k = 15;
    with_original.master_seed = 3;
    with_original.tables = std::make_shared<const FfmTables>(original);
    GaConfig with_loaded = with_original;
    with_loaded.tables = std::make_shared<const FfmTables>(loaded);

    const RunTrace a = run(with_original);
    const RunTrace b = run(with_loaded);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].best_fitness == b.records[i].best_fitness);
        CHECK(a.records[i].best_word == b.records[i].best_word);
    }
}

#ifdef GASIM_CLI_PATH
TEST_CASE("the cli distinguishes usage errors from runtime errors") {
    const std::string cli = GASIM_CLI_PATH;
    const auto exit_code = [](const std::string& cmd) {
        const int status = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(status);
    };
    CHECK(exit_code(cli + " --function f2 --n 8 --m 12 --k 3 --no-trace --trace-dir " +
                    fresh_dir("cli_ok").string()) == 0);
    CHECK(exit_code(cli) == 1);                         // no fitness source
    CHECK(exit_code(cli + " --function f9") == 1);      // bad preset
    CHECK(exit_code(cli + " --function f2 --m 13") == 1); // invalid width
    // f3 at m=20 quantizes gamma on the fly: dumping it is a runtime failure
    CHECK(exit_code(cli + " --function f3 --m 20 --k 1 --n 4 --dump-roms --no-trace --trace-dir " +
                    fresh_dir("cli_dumpfail").string()) == 2);
}
#endif

TEST_CASE("custom functions run from rom files alone") {
    const fs::path dir = fresh_dir("rom_custom");
    const FixedFormat value_fmt{48, 8};
    FfmTables custom;
    custom.alpha = build_rom([](double x) { return 2.5 * x * x; }, 5, DomainMap::twos(), value_fmt);
    custom.beta = build_rom([](double y) { return 7.0 - y; }, 5, DomainMap::twos(), value_fmt);
    custom.gamma = gamma_passthrough();
    custom.delta_fmt = {49, 8};
    custom.fitness_fmt = {48, 8};
    validate_tables(custom);
    dump_rom_files(custom, dir);

    ExperimentSpec spec;
    apply_config_key(spec, "rom_dir", dir.string());
    apply_config_key(spec, "n", "4");
    apply_config_key(spec, "k", "5");
    spec.out_dir = (dir / "out").string();
    spec.check_oracle = true;
    resolve_tables(spec);
    CHECK(spec.base.m == 10); // inferred from the dumps
    const ExperimentResult result = run_experiment(spec);
    CHECK(result.runs.size() == 1);
    CHECK(result.oracle.has_value());
}
