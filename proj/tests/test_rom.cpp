#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gasim/ffm.hpp"
#include "gasim/presets.hpp"
#include "gasim/rom.hpp"
#include "test_util.hpp"

using namespace gasim;

namespace {
const FixedFormat kValueFmt{48, 8};
}

TEST_CASE("build_rom quantizes over the domain map") {
    const RomTable alpha =
        build_rom([](double x) { return 8.0 * x; }, 10, DomainMap::twos(), kValueFmt);
    CHECK(alpha.entries.size() == 1024);
    CHECK(alpha.entries[1] == 8 * 256);
    CHECK(alpha.entries[0x3FF] == -8 * 256); // address 1023 decodes to -1

    // F1's cubic at the left domain edge, m = 26
    const RomTable beta = build_rom(
        [](double q) { return q * q * q - 15.0 * q * q + 500.0; }, 13, DomainMap::twos(),
        kValueFmt);
    CHECK(beta.entries[0x1000] == -17656610425856ll); // f(-4096) * 2^8
    CHECK(beta.entries[0] == 500 * 256);

    const RomTable zero = build_rom([](double) { return 0.0; }, 8, DomainMap::twos(), kValueFmt);
    for (const auto e : zero.entries) CHECK(e == 0);
}

TEST_CASE("build_rom reports non-finite values with their address") {
    const auto bad = [](double x) { return x == 3.0 ? std::nan("") : 0.0; };
    CHECK_THROWS_WITH_AS(build_rom(bad, 4, DomainMap::affine(0.0), kValueFmt),
                         doctest::Contains("address 3"), std::runtime_error);
    CHECK_THROWS_AS(build_rom([](double) { return 0.0; }, 0, DomainMap::twos(), kValueFmt),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_rom([](double) { return 0.0; }, 17, DomainMap::twos(), kValueFmt),
                    std::invalid_argument);
}

TEST_CASE("build_rom is pure") {
    const auto f = [](double x) { return std::sin(x) * 100.0; };
    const RomTable a = build_rom(f, 12, DomainMap::twos(), kValueFmt);
    const RomTable b = build_rom(f, 12, DomainMap::twos(), kValueFmt);
    CHECK(a == b);
}

TEST_CASE("preset tables quantize within half an LSB at every address") {
    struct Case {
        Preset preset;
        int m;
        double (*alpha_fn)(double);
        double (*beta_fn)(double);
    };
    const Case cases[] = {
        {Preset::f1, 26, [](double) { return 0.0; },
         [](double q) { return q * q * q - 15.0 * q * q + 500.0; }},
        {Preset::f2, 20, [](double x) { return 8.0 * x; },
         [](double y) { return -4.0 * y + 1020.0; }},
        {Preset::f3, 20, [](double x) { return x * x; }, [](double y) { return y * y; }},
    };
    for (const Case& c : cases) {
        const FfmTables t = build_preset_tables(c.preset, c.m);
        const double half_lsb = std::ldexp(1.0, -t.alpha.out_fmt.frac_bits - 1);
        const DomainMap hi = preset_hi_map(c.preset);
        const DomainMap lo = preset_lo_map(c.preset);
        for (std::size_t h = 0; h < t.alpha.entries.size(); ++h) {
            const double want = c.alpha_fn(hi.value(static_cast<std::uint32_t>(h), t.alpha.in_bits));
            const double got = std::ldexp(static_cast<double>(t.alpha.entries[h]),
                                          -t.alpha.out_fmt.frac_bits);
            REQUIRE(std::fabs(got - want) <= half_lsb);
        }
        for (std::size_t h = 0; h < t.beta.entries.size(); ++h) {
            const double want = c.beta_fn(lo.value(static_cast<std::uint32_t>(h), t.beta.in_bits));
            const double got = std::ldexp(static_cast<double>(t.beta.entries[h]),
                                          -t.beta.out_fmt.frac_bits);
            REQUIRE(std::fabs(got - want) <= half_lsb);
        }
    }
}

TEST_CASE("gamma stage: passthrough for identity decompositions") {
    CHECK(build_preset_tables(Preset::f1, 26).gamma.kind == GammaKind::passthrough);
    CHECK(build_preset_tables(Preset::f2, 20).gamma.kind == GammaKind::passthrough);
}

TEST_CASE("gamma stage: materialized table for small windows") {
    const FfmTables t = build_preset_tables(Preset::f3, 8); // window 450*256+1 entries
    REQUIRE(t.gamma.kind == GammaKind::table);
    CHECK(t.gamma.table.addr_offset == 0);
    // sqrt(25) through the table: delta 25.0 sits at scaled address 25*256
    CHECK(t.gamma.table.entries[25 * 256] == 5 * 256);
    CHECK(t.gamma.table.entries[0] == 0);
}

TEST_CASE("gamma stage: on-the-fly evaluator beyond the cap equals a table") {
    const FixedFormat delta_fmt{49, 8};
    const FixedFormat fit_fmt{48, 8};
    const auto g = [](double d) { return std::sqrt(d); };
    const std::int64_t dmin = 0, dmax = 115200;
    const GammaStage table = build_gamma(g, delta_fmt, fit_fmt, dmin, dmax);
    const GammaStage fly = build_gamma(g, delta_fmt, fit_fmt, dmin, dmax, /*cap=*/1024);
    REQUIRE(table.kind == GammaKind::table);
    REQUIRE(fly.kind == GammaKind::quantized_eval);

    test::SplitMix64 rng(3);
    for (int i = 0; i < 10000; ++i) {
        const std::int64_t d = dmin + static_cast<std::int64_t>(rng.below(dmax - dmin + 1));
        const std::int64_t via_table = table.table.entries[static_cast<std::size_t>(d - dmin)];
        const std::int64_t via_fly =
            encode_fixed_value(fly.fn(std::ldexp(static_cast<double>(d), -delta_fmt.frac_bits)),
                               fit_fmt);
        REQUIRE(via_table == via_fly);
    }

    CHECK(build_preset_tables(Preset::f3, 20).gamma.kind == GammaKind::quantized_eval);
}

TEST_CASE("gamma build rejects non-finite values on the window") {
    CHECK_THROWS_AS(build_gamma([](double d) { return std::sqrt(d); }, {49, 8}, {48, 8}, -256, 0),
                    std::runtime_error);
}

TEST_CASE("dump and load round-trip") {
    test::SplitMix64 rng(99);
    RomTable t;
    t.in_bits = 6;
    t.out_fmt = {12, 4};
    t.addr_offset = -37;
    for (int i = 0; i < 64; ++i)
        t.entries.push_back(sign_extend(rng.next_u32() & 0xFFFu, 12));
    const std::string text = dump_rom(t);
    CHECK(load_rom(text) == t);
}

TEST_CASE("load_rom rejects malformed documents with line numbers") {
    RomTable t;
    t.in_bits = 2;
    t.out_fmt = {8, 0};
    t.entries = {1, -2, 3, 0x7F};
    const std::string good = dump_rom(t);
    REQUIRE(load_rom(good) == t);

    SUBCASE("bad version") {
        CHECK_THROWS_WITH_AS(load_rom("rom-version 2\n"), doctest::Contains("line 1"),
                             std::runtime_error);
    }
    SUBCASE("truncated entries") {
        const std::string cut = good.substr(0, good.rfind("7f"));
        CHECK_THROWS_WITH_AS(load_rom(cut), doctest::Contains("truncated"), std::runtime_error);
    }
    SUBCASE("entry width mismatch") {
        std::string wide = good;
        wide.replace(wide.rfind("7f"), 2, "07f");
        CHECK_THROWS_WITH_AS(load_rom(wide), doctest::Contains("line 9"), std::runtime_error);
    }
    SUBCASE("entry exceeds format width") {
        RomTable narrow = t;
        narrow.out_fmt = {7, 0};
        narrow.entries = {1, -2, 3, 63};
        const std::string text = dump_rom(narrow); // 7 bits still print 2 hex digits
        std::string bad = text;
        bad.replace(bad.rfind("3f"), 2, "ff");
        CHECK_THROWS_WITH_AS(load_rom(bad), doctest::Contains("exceeds"), std::runtime_error);
    }
    SUBCASE("trailing garbage") {
        CHECK_THROWS_WITH_AS(load_rom(good + "00\n"), doctest::Contains("trailing"),
                             std::runtime_error);
    }
}

TEST_CASE("passthrough equals a materialized identity table on every chromosome") {
    // small formats make the check exhaustive over all inputs
    const FixedFormat value_fmt{7, 2};
    const FixedFormat delta_fmt{8, 2};
    const FixedFormat fit_fmt{8, 2};
    const auto wavy = [](double x) { return 3.7 * std::sin(x) + 0.25 * x; };

    FfmTables with_pass;
    with_pass.alpha = build_rom(wavy, 4, DomainMap::twos(), value_fmt);
    with_pass.beta = build_rom([&](double x) { return wavy(-x); }, 4, DomainMap::twos(), value_fmt);
    with_pass.gamma = gamma_passthrough();
    with_pass.delta_fmt = delta_fmt;
    with_pass.fitness_fmt = fit_fmt;
    validate_tables(with_pass);

    FfmTables with_table = with_pass;
    with_table.gamma =
        build_gamma([](double d) { return d; }, delta_fmt, fit_fmt,
                    with_pass.alpha.min_entry() + with_pass.beta.min_entry(),
                    with_pass.alpha.max_entry() + with_pass.beta.max_entry());
    REQUIRE(with_table.gamma.kind == GammaKind::table);
    validate_tables(with_table);

    for (Word x = 0; x < (Word{1} << 8); ++x)
        REQUIRE(ffm_evaluate(x, with_pass) == ffm_evaluate(x, with_table));
}

TEST_CASE("table validation catches inconsistent sets") {
    FfmTables t = build_preset_tables(Preset::f2, 12);
    CHECK_NOTHROW(validate_tables(t));
    FfmTables bad = t;
    bad.beta.out_fmt.frac_bits = 0;
    CHECK_THROWS_AS(validate_tables(bad), std::invalid_argument);
    bad = t;
    bad.delta_fmt.total_bits = 48;
    CHECK_THROWS_AS(validate_tables(bad), std::invalid_argument);
    bad = t;
    bad.alpha.entries.pop_back();
    CHECK_THROWS_AS(validate_tables(bad), std::invalid_argument);
}
