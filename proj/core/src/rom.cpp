#include "gasim/rom.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace gasim {

double DomainMap::value(std::uint32_t index, int bits) const {
    switch (kind) {
    case Kind::twos_complement:
        return static_cast<double>(sign_extend(index, bits));
    case Kind::affine:
        return lo + static_cast<double>(index) * step;
    }
    throw std::logic_error("DomainMap: bad kind");
}

std::int64_t RomTable::min_entry() const {
    return *std::min_element(entries.begin(), entries.end());
}

std::int64_t RomTable::max_entry() const {
    return *std::max_element(entries.begin(), entries.end());
}

RomTable build_rom(const std::function<double(double)>& f, int in_bits,
                   const DomainMap& domain_map, const FixedFormat& out_fmt) {
    if (in_bits < 1 || in_bits > 16)
        throw std::invalid_argument("build_rom: in_bits must be in [1, 16]");
    check_format(out_fmt);
    RomTable t;
    t.in_bits = in_bits;
    t.out_fmt = out_fmt;
    t.addr_offset = 0;
    const std::size_t size = std::size_t{1} << in_bits;
    t.entries.resize(size);
    for (std::size_t h = 0; h < size; ++h) {
        const double v = f(domain_map.value(static_cast<std::uint32_t>(h), in_bits));
        if (!std::isfinite(v))
            throw std::runtime_error("build_rom: non-finite value at address " + std::to_string(h));
        t.entries[h] = encode_fixed_value(v, out_fmt);
    }
    return t;
}

GammaStage gamma_passthrough() {
    return {};
}

GammaStage build_gamma(const std::function<double(double)>& g, const FixedFormat& delta_fmt,
                       const FixedFormat& fitness_fmt, std::int64_t delta_min,
                       std::int64_t delta_max, std::int64_t cap) {
    check_format(delta_fmt);
    check_format(fitness_fmt);
    if (delta_max < delta_min)
        throw std::invalid_argument("build_gamma: empty delta window");

    const auto quantized = [&, g](std::int64_t delta_scaled) {
        const double x = std::ldexp(static_cast<double>(delta_scaled), -delta_fmt.frac_bits);
        const double v = g(x);
        if (!std::isfinite(v))
            throw std::runtime_error("build_gamma: non-finite value at delta " +
                                     std::to_string(delta_scaled));
        return encode_fixed_value(v, fitness_fmt);
    };

    const auto window = static_cast<std::uint64_t>(delta_max - delta_min) + 1;
    if (window > static_cast<std::uint64_t>(cap)) {
        quantized(delta_min); // at least the window ends must be finite
        quantized(delta_max);
        GammaStage stage;
        stage.kind = GammaKind::quantized_eval;
        stage.fn = g;
        return stage;
    }

    GammaStage stage;
    stage.kind = GammaKind::table;
    RomTable& t = stage.table;
    t.in_bits = window <= 1 ? 1 : static_cast<int>(std::bit_width(window - 1));
    if (t.in_bits > 30)
        throw std::invalid_argument("build_gamma: window too large to materialize");
    t.out_fmt = fitness_fmt;
    t.addr_offset = delta_min;
    const std::size_t size = std::size_t{1} << t.in_bits;
    t.entries.resize(size);
    for (std::uint64_t i = 0; i < window; ++i)
        t.entries[i] = quantized(delta_min + static_cast<std::int64_t>(i));
    // padding above delta_max is unreachable; replicate the last real entry
    for (std::size_t i = window; i < size; ++i)
        t.entries[i] = t.entries[window - 1];
    return stage;
}

void validate_tables(const FfmTables& t) {
    check_format(t.alpha.out_fmt);
    check_format(t.delta_fmt);
    check_format(t.fitness_fmt);
    if (t.alpha.out_fmt != t.beta.out_fmt)
        throw std::invalid_argument("FfmTables: alpha and beta output formats must match");
    if (t.delta_fmt.total_bits != t.alpha.out_fmt.total_bits + 1 ||
        t.delta_fmt.frac_bits != t.alpha.out_fmt.frac_bits)
        throw std::invalid_argument("FfmTables: delta format must be one bit wider than alpha/beta");
    if (t.alpha.entries.size() != (std::size_t{1} << t.alpha.in_bits) ||
        t.beta.entries.size() != (std::size_t{1} << t.beta.in_bits))
        throw std::invalid_argument("FfmTables: table size must be exactly 2^in_bits");
    if (t.gamma.kind == GammaKind::table) {
        const std::int64_t dmin = t.alpha.min_entry() + t.beta.min_entry();
        const std::int64_t dmax = t.alpha.max_entry() + t.beta.max_entry();
        const auto window = static_cast<std::int64_t>(t.gamma.table.entries.size());
        if (t.gamma.table.addr_offset > dmin ||
            t.gamma.table.addr_offset + window - 1 < dmax)
            throw std::invalid_argument("FfmTables: gamma window does not cover the achievable delta range");
    }
    if (t.gamma.kind == GammaKind::quantized_eval && !t.gamma.fn)
        throw std::invalid_argument("FfmTables: quantized gamma stage has no function");
}

namespace {

int hex_digits(int total_bits) {
    return (total_bits + 3) / 4;
}

} // namespace

void dump_rom(const RomTable& t, std::ostream& out) {
    out << "rom-version 1\n";
    out << "in_bits " << t.in_bits << "\n";
    out << "out_total " << t.out_fmt.total_bits << "\n";
    out << "out_frac " << t.out_fmt.frac_bits << "\n";
    out << "addr_offset " << t.addr_offset << "\n";
    const int digits = hex_digits(t.out_fmt.total_bits);
    const std::uint64_t mask = word_mask(t.out_fmt.total_bits);
    char buf[24];
    for (const std::int64_t e : t.entries) {
        std::snprintf(buf, sizeof buf, "%0*llx", digits,
                      static_cast<unsigned long long>(static_cast<std::uint64_t>(e) & mask));
        out << buf << "\n";
    }
}

std::string dump_rom(const RomTable& t) {
    std::ostringstream os;
    dump_rom(t, os);
    return os.str();
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    throw std::runtime_error("rom parse error at line " + std::to_string(line) + ": " + what);
}

} // namespace

RomTable load_rom(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;

    const auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        return false;
    };

    const auto expect_header = [&](const std::string& key) -> long long {
        if (!next_line()) parse_fail(lineno + 1, "missing header '" + key + "'");
        std::istringstream ls(line);
        std::string k;
        long long v = 0;
        if (!(ls >> k >> v) || k != key) parse_fail(lineno, "expected '" + key + " <value>'");
        return v;
    };

    if (!next_line()) parse_fail(1, "empty document");
    if (line != "rom-version 1") parse_fail(lineno, "unsupported version header");

    RomTable t;
    t.in_bits = static_cast<int>(expect_header("in_bits"));
    if (t.in_bits < 1 || t.in_bits > 30) parse_fail(lineno, "in_bits out of range");
    t.out_fmt.total_bits = static_cast<int>(expect_header("out_total"));
    t.out_fmt.frac_bits = static_cast<int>(expect_header("out_frac"));
    try {
        check_format(t.out_fmt);
    } catch (const std::invalid_argument& e) {
        parse_fail(lineno, e.what());
    }
    t.addr_offset = expect_header("addr_offset");

    const std::size_t size = std::size_t{1} << t.in_bits;
    const int digits = hex_digits(t.out_fmt.total_bits);
    t.entries.reserve(std::min(size, std::size_t{1} << 20));
    for (std::size_t i = 0; i < size; ++i) {
        if (!next_line()) parse_fail(lineno + 1, "truncated: expected " + std::to_string(size) +
                                                     " entries, got " + std::to_string(i));
        if (line.size() != static_cast<std::size_t>(digits))
            parse_fail(lineno, "entry width mismatch: expected " + std::to_string(digits) +
                                   " hex digits");
        std::uint64_t raw = 0;
        for (const char c : line) {
            int d;
            if (c >= '0' && c <= '9') d = c - '0';
            else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
            else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
            else parse_fail(lineno, "invalid hex digit");
            raw = (raw << 4) | static_cast<std::uint64_t>(d);
        }
        if (raw & ~word_mask(t.out_fmt.total_bits))
            parse_fail(lineno, "entry exceeds out_total width");
        t.entries.push_back(sign_extend(raw, t.out_fmt.total_bits));
    }
    if (next_line()) parse_fail(lineno, "trailing content after last entry");
    return t;
}

RomTable load_rom(const std::string& text) {
    std::istringstream is(text);
    return load_rom(is);
}

} // namespace gasim
