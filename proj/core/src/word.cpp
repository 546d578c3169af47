#include "gasim/word.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gasim {

double FixedFormat::lsb() const {
    return std::ldexp(1.0, -frac_bits);
}

void check_format(const FixedFormat& fmt) {
    if (fmt.total_bits < 1 || fmt.total_bits > 64)
        throw std::invalid_argument("FixedFormat: total_bits must be in [1, 64], got " +
                                    std::to_string(fmt.total_bits));
    if (fmt.frac_bits < 0 || fmt.frac_bits >= fmt.total_bits)
        throw std::invalid_argument("FixedFormat: frac_bits must be in [0, total_bits), got " +
                                    std::to_string(fmt.frac_bits));
}

void validate_word_width(int m) {
    if (m < kMinWordBits || m > kMaxWordBits || m % 2 != 0)
        throw std::invalid_argument("chromosome width m must be even and in [4, 32], got " +
                                    std::to_string(m));
}

std::pair<Word, Word> split(Word x, int m) {
    validate_word_width(m);
    const int half = m / 2;
    return {x >> half, x & static_cast<Word>(word_mask(half))};
}

Word concat(Word hi, Word lo, int m) {
    validate_word_width(m);
    const int half = m / 2;
    const Word hmask = static_cast<Word>(word_mask(half));
    if (hi > hmask || lo > hmask)
        throw std::invalid_argument("concat: half-word overflows " + std::to_string(half) + " bits");
    return (hi << half) | lo;
}

std::int32_t half_as_signed(Word half, int half_bits) {
    return static_cast<std::int32_t>(sign_extend(half, half_bits));
}

double decode_fixed(std::uint64_t w, const FixedFormat& fmt) {
    return std::ldexp(static_cast<double>(sign_extend(w, fmt.total_bits)), -fmt.frac_bits);
}

std::int64_t encode_fixed_value(double v, const FixedFormat& fmt, bool* saturated) {
    if (saturated) *saturated = false;
    if (std::isnan(v)) throw std::invalid_argument("encode_fixed: NaN has no fixed-point value");
    const double scaled = std::ldexp(v, fmt.frac_bits);
    // llround is ties-away-from-zero; clamp first so it never sees an
    // out-of-range argument. hi = 2^(total-1): values >= hi - 0.5 would round
    // past max_int, values <= -hi - 0.5 past min_int.
    const double hi = std::ldexp(1.0, fmt.total_bits - 1);
    if (scaled >= hi - 0.5) {
        if (saturated) *saturated = true;
        return fmt.max_int();
    }
    if (scaled <= -hi - 0.5) {
        if (saturated) *saturated = true;
        return fmt.min_int();
    }
    return std::llround(scaled);
}

std::uint64_t encode_fixed(double v, const FixedFormat& fmt, bool* saturated) {
    return static_cast<std::uint64_t>(encode_fixed_value(v, fmt, saturated)) &
           word_mask(fmt.total_bits);
}

} // namespace gasim
