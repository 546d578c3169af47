#include "gasim/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace gasim {

std::optional<Preset> preset_from_name(const std::string& name) {
    if (name == "f1") return Preset::f1;
    if (name == "f2") return Preset::f2;
    if (name == "f3") return Preset::f3;
    return std::nullopt;
}

std::string preset_name(Preset p) {
    switch (p) {
    case Preset::f1: return "f1";
    case Preset::f2: return "f2";
    case Preset::f3: return "f3";
    }
    return "?";
}

bool preset_single_variable(Preset p) {
    return p == Preset::f1;
}

double preset_reference(Preset p, double x, double y) {
    switch (p) {
    case Preset::f1: return y * y * y - 15.0 * y * y + 500.0;
    case Preset::f2: return 8.0 * x - 4.0 * y + 1020.0;
    case Preset::f3: return std::sqrt(x * x + y * y);
    }
    throw std::logic_error("preset_reference: bad preset");
}

DomainMap preset_hi_map(Preset p) {
    return p == Preset::f3 ? DomainMap::affine(0.0, 1.0) : DomainMap::twos();
}

DomainMap preset_lo_map(Preset p) {
    return p == Preset::f3 ? DomainMap::affine(0.0, 1.0) : DomainMap::twos();
}

FfmTables build_preset_tables(Preset p, int m, const TableFormats& formats,
                              std::int64_t gamma_cap) {
    validate_word_width(m);
    const int half = m / 2;
    const FixedFormat value_fmt = formats.value_fmt();
    const FixedFormat delta_fmt = formats.delta_fmt();
    const FixedFormat fitness_fmt = formats.fitness_fmt();

    FfmTables t;
    t.delta_fmt = delta_fmt;
    t.fitness_fmt = fitness_fmt;

    switch (p) {
    case Preset::f1:
        t.alpha = build_rom([](double) { return 0.0; }, half, preset_hi_map(p), value_fmt);
        t.beta = build_rom([](double q) { return q * q * q - 15.0 * q * q + 500.0; }, half,
                           preset_lo_map(p), value_fmt);
        t.gamma = gamma_passthrough();
        break;
    case Preset::f2:
        t.alpha = build_rom([](double x) { return 8.0 * x; }, half, preset_hi_map(p), value_fmt);
        t.beta = build_rom([](double y) { return -4.0 * y + 1020.0; }, half, preset_lo_map(p),
                           value_fmt);
        t.gamma = gamma_passthrough();
        break;
    case Preset::f3:
        t.alpha = build_rom([](double x) { return x * x; }, half, preset_hi_map(p), value_fmt);
        t.beta = build_rom([](double y) { return y * y; }, half, preset_lo_map(p), value_fmt);
        t.gamma = build_gamma([](double d) { return std::sqrt(d); }, delta_fmt, fitness_fmt,
                              t.alpha.min_entry() + t.beta.min_entry(),
                              t.alpha.max_entry() + t.beta.max_entry(), gamma_cap);
        break;
    }
    validate_tables(t);
    return t;
}

} // namespace gasim
