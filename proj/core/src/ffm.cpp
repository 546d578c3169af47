#include "gasim/ffm.hpp"

#include <cassert>
#include <cmath>

namespace gasim {

namespace {

// Converts a signed scaled value between fixed-point formats, rounding ties
// away from zero and saturating. Exact whenever the value is representable.
std::int64_t rescale_saturate(std::int64_t v, int from_frac, const FixedFormat& to) {
    if (to.frac_bits > from_frac) {
        const int up = to.frac_bits - from_frac;
        if (v > (to.max_int() >> up)) return to.max_int();
        if (v < (to.min_int() >> up)) return to.min_int();
        return v << up;
    }
    if (to.frac_bits < from_frac) {
        const std::int64_t denom = std::int64_t{1} << (from_frac - to.frac_bits);
        const std::int64_t half = denom / 2;
        v = v >= 0 ? (v + half) / denom : -((-v + half) / denom);
    }
    if (v > to.max_int()) return to.max_int();
    if (v < to.min_int()) return to.min_int();
    return v;
}

} // namespace

FitnessValue ffm_evaluate(Word x, const FfmTables& t) {
    const Word hi = x >> t.beta.in_bits;
    const Word lo = x & static_cast<Word>(word_mask(t.beta.in_bits));
    assert(hi < (Word{1} << t.alpha.in_bits));

    const std::int64_t delta = t.alpha.entries[hi] + t.beta.entries[lo];

    switch (t.gamma.kind) {
    case GammaKind::passthrough:
        return rescale_saturate(delta, t.delta_fmt.frac_bits, t.fitness_fmt);
    case GammaKind::table: {
        const std::int64_t idx = delta - t.gamma.table.addr_offset;
        assert(idx >= 0 && static_cast<std::size_t>(idx) < t.gamma.table.entries.size());
        return t.gamma.table.entries[static_cast<std::size_t>(idx)];
    }
    case GammaKind::quantized_eval: {
        const double d = std::ldexp(static_cast<double>(delta), -t.delta_fmt.frac_bits);
        return encode_fixed_value(t.gamma.fn(d), t.fitness_fmt);
    }
    }
    assert(false);
    return 0;
}

double fitness_to_real(FitnessValue y, const FfmTables& t) {
    return std::ldexp(static_cast<double>(y), -t.fitness_fmt.frac_bits);
}

} // namespace gasim
