#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gasim/word.hpp"

namespace gasim {

// Maps a half-word ROM address to the real variable value it represents.
// Default: two's-complement integer. Alternative: affine lo + index * step.
struct DomainMap {
    enum class Kind { twos_complement, affine };
    Kind kind = Kind::twos_complement;
    double lo = 0.0;
    double step = 1.0;

    double value(std::uint32_t index, int bits) const;

    static DomainMap twos() { return {}; }
    static DomainMap affine(double lo, double step = 1.0) {
        return {Kind::affine, lo, step};
    }
};

// A quantized lookup table: exactly 2^in_bits entries, each a signed scaled
// value fitting out_fmt. addr_offset shifts the address window for delta-
// indexed tables (0 for the alpha/beta variable tables).
struct RomTable {
    int in_bits = 0;
    FixedFormat out_fmt;
    std::int64_t addr_offset = 0;
    std::vector<std::int64_t> entries;

    std::int64_t min_entry() const;
    std::int64_t max_entry() const;
    bool operator==(const RomTable&) const = default;
};

/// Quantizes f over the 2^in_bits address grid: entries[h] =
/// encode(f(domain_map(h)), out_fmt). Throws std::runtime_error naming the
/// address when f is non-finite at a grid point. in_bits <= 16.
RomTable build_rom(const std::function<double(double)>& f, int in_bits,
                   const DomainMap& domain_map, const FixedFormat& out_fmt);

// The final pipeline stage mapping the delta sum to the fitness word.
// Passthrough re-encodes delta into the fitness format exactly; a table is
// materialized over the achievable delta window when it fits the entry cap,
// otherwise the stage quantizes on the fly (value-identical to the table).
enum class GammaKind { passthrough, table, quantized_eval };

struct GammaStage {
    GammaKind kind = GammaKind::passthrough;
    RomTable table;                       // kind == table
    std::function<double(double)> fn;     // kind == quantized_eval
};

inline constexpr std::int64_t kDefaultGammaCap = std::int64_t{1} << 24;

GammaStage gamma_passthrough();

/// Builds the gamma stage for a non-identity g over the achievable window
/// [delta_min, delta_max] (signed scaled values in delta_fmt). Materializes a
/// table with addr_offset = delta_min when the window has at most cap entries;
/// pads the table up to 2^in_bits by replicating the last entry (the adder can
/// never produce those addresses). Throws std::runtime_error when g is
/// non-finite anywhere on the window.
GammaStage build_gamma(const std::function<double(double)>& g, const FixedFormat& delta_fmt,
                       const FixedFormat& fitness_fmt, std::int64_t delta_min,
                       std::int64_t delta_max, std::int64_t cap = kDefaultGammaCap);

// The complete fitness-pipeline ROM set: two variable tables of equal format
// (width c), the delta format (width c+1), the gamma stage, and the fitness
// output format (width a).
struct FfmTables {
    RomTable alpha;
    RomTable beta;
    GammaStage gamma;
    FixedFormat delta_fmt;
    FixedFormat fitness_fmt;

    int chromosome_bits() const { return alpha.in_bits + beta.in_bits; }
};

/// Checks the cross-table invariants: equal alpha/beta formats, delta width
/// c+1 with matching fraction, and (for a gamma table) an address window
/// covering [min alpha + min beta, max alpha + max beta].
void validate_tables(const FfmTables& t);

// Table width configuration. Defaults: alpha/beta output 48 bits with 8
// fraction bits, delta 49, fitness 48 with 8 fraction bits.
struct TableFormats {
    int value_bits = 48;
    int frac_bits = 8;
    int fitness_bits = 48;

    FixedFormat value_fmt() const { return {value_bits, frac_bits}; }
    FixedFormat delta_fmt() const { return {value_bits + 1, frac_bits}; }
    FixedFormat fitness_fmt() const { return {fitness_bits, frac_bits}; }
};

// Line-oriented text dump, bit-exact across platforms:
//   rom-version 1
//   in_bits <n>
//   out_total <n>
//   out_frac <n>
//   addr_offset <signed int>
// followed by exactly 2^in_bits hexadecimal entry words (two's complement,
// zero-padded to ceil(out_total/4) digits).
void dump_rom(const RomTable& t, std::ostream& out);
std::string dump_rom(const RomTable& t);

/// Parses a dump; throws std::runtime_error with the offending line number on
/// malformed headers, wrong entry counts, or entries exceeding the format width.
RomTable load_rom(std::istream& in);
RomTable load_rom(const std::string& text);

} // namespace gasim
