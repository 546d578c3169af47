#include "gasim/genetic_ops.hpp"

#include <bit>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "gasim/prng.hpp"

namespace gasim {

int ceil_log2(std::uint32_t v) {
    assert(v >= 1);
    return v <= 1 ? 0 : std::bit_width(v - 1);
}

std::size_t tournament_pick(std::span<const FitnessValue> fit, std::uint32_t r1,
                            std::uint32_t r2, SelectionMode mode) {
    const auto n = static_cast<std::uint32_t>(fit.size());
    assert(n >= 2 && std::has_single_bit(n));
    const int idx_bits = ceil_log2(n);
    const std::size_t i1 = top_bits(r1, idx_bits);
    const std::size_t i2 = top_bits(r2, idx_bits);
    const bool second_wins =
        mode == SelectionMode::minimize ? fit[i2] < fit[i1] : fit[i2] > fit[i1];
    return second_wins ? i2 : i1;
}

Word tournament(std::span<const Word> pop, std::span<const FitnessValue> fit,
                std::uint32_t r1, std::uint32_t r2, SelectionMode mode) {
    assert(pop.size() == fit.size());
    return pop[tournament_pick(fit, r1, r2, mode)];
}

CutMask cut_mask(std::uint32_t draw, int half_bits) {
    assert(half_bits >= 1 && half_bits <= 16);
    const int sel_bits = ceil_log2(static_cast<std::uint32_t>(half_bits) + 1);
    const int shift = static_cast<int>(top_bits(draw, sel_bits) % static_cast<std::uint32_t>(half_bits));
    CutMask m;
    m.half_bits = half_bits;
    m.shift = shift;
    m.tail = static_cast<std::uint32_t>(word_mask(half_bits)) >> shift;
    return m;
}

std::pair<Word, Word> cross_half(Word a, Word b, const CutMask& mask) {
    const Word head_a = mask.head() & a;
    const Word head_b = mask.head() & b;
    const Word tail_a = mask.tail & a;
    const Word tail_b = mask.tail & b;
    return {head_a | tail_b, head_b | tail_a};
}

std::pair<Word, Word> crossover_pair(Word w1, Word w2, std::uint32_t rp, std::uint32_t rq, int m) {
    const int half = m / 2;
    const auto [p1, q1] = split(w1, m);
    const auto [p2, q2] = split(w2, m);
    const auto [cp1, cp2] = cross_half(p1, p2, cut_mask(rp, half));
    const auto [cq1, cq2] = cross_half(q1, q2, cut_mask(rq, half));
    return {concat(cp1, cq1, m), concat(cp2, cq2, m)};
}

Word mutate(Word z, Word rand_word) {
    return z ^ rand_word;
}

Word mutation_word(std::uint32_t draw, int m) {
    const int pos_bits = ceil_log2(static_cast<std::uint32_t>(m));
    const int pos = static_cast<int>(top_bits(draw, pos_bits) % static_cast<std::uint32_t>(m));
    return Word{1} << pos;
}

int mutated_count(int n, double rate) {
    if (!(rate >= 0.0 && rate <= 1.0))
        throw std::invalid_argument("mutation rate must be in [0, 1]");
    return static_cast<int>(std::ceil(static_cast<double>(n) * rate));
}

} // namespace gasim
