#pragma once

#include <cstdint>
#include <utility>

namespace gasim {

// An m-bit chromosome word, m even, 4 <= m <= 32. Only the low m bits may be
// set; the upper half encodes the first variable, the lower half the second.
using Word = std::uint32_t;

inline constexpr int kMinWordBits = 4;
inline constexpr int kMaxWordBits = 32;

/// Low-`bits` mask (bits in [0, 64]).
constexpr std::uint64_t word_mask(int bits) {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

/// Two's-complement sign extension of the low `bits` of `w`.
constexpr std::int64_t sign_extend(std::uint64_t w, int bits) {
    const std::uint64_t m = word_mask(bits);
    w &= m;
    const std::uint64_t sign = std::uint64_t{1} << (bits - 1);
    return static_cast<std::int64_t>((w ^ sign) - sign);
}

// Signed fixed-point format: `total_bits` two's-complement bits of which the
// low `frac_bits` are fractional. 1 <= total_bits <= 64, 0 <= frac_bits < total_bits.
struct FixedFormat {
    int total_bits = 32;
    int frac_bits = 0;

    std::int64_t max_int() const { return static_cast<std::int64_t>(word_mask(total_bits - 1)); }
    std::int64_t min_int() const { return -max_int() - 1; }
    double lsb() const; // 2^-frac_bits

    bool operator==(const FixedFormat&) const = default;
};

void check_format(const FixedFormat& fmt);

/// Splits an m-bit chromosome into its (upper, lower) halves of m/2 bits each.
std::pair<Word, Word> split(Word x, int m);

/// Concatenates two m/2-bit halves into an m-bit chromosome: (hi << m/2) | lo.
/// Throws std::invalid_argument if either half overflows m/2 bits.
Word concat(Word hi, Word lo, int m);

/// Two's-complement value of an m/2-bit half-word.
std::int32_t half_as_signed(Word half, int half_bits);

/// Interprets the low total_bits of `w` as two's complement and returns
/// signed_int(w) / 2^frac_bits.
double decode_fixed(std::uint64_t w, const FixedFormat& fmt);

/// Rounds v * 2^frac_bits to the nearest integer (ties away from zero) and
/// saturates to the format range. Returns the raw two's-complement word;
/// `*saturated` is set when the value was clamped.
std::uint64_t encode_fixed(double v, const FixedFormat& fmt, bool* saturated = nullptr);

/// encode_fixed, returned as the signed scaled integer instead of raw bits.
std::int64_t encode_fixed_value(double v, const FixedFormat& fmt, bool* saturated = nullptr);

void validate_word_width(int m);

} // namespace gasim
