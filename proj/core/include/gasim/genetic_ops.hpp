#pragma once

#include <cstdint>
#include <span>
#include <utility>

#include "gasim/ffm.hpp"
#include "gasim/word.hpp"

namespace gasim {

enum class SelectionMode { minimize, maximize };

/// Tournament of two: indices are the top log2(N) bits of each draw, the
/// winner is the argbest fitness under the mode, ties go to the first index.
/// N must be a power of two so the truncated indices address exactly N slots.
Word tournament(std::span<const Word> pop, std::span<const FitnessValue> fit,
                std::uint32_t r1, std::uint32_t r2, SelectionMode mode);

/// Index-returning variant used by the engine and tests.
std::size_t tournament_pick(std::span<const FitnessValue> fit, std::uint32_t r1,
                            std::uint32_t r2, SelectionMode mode);

// Single-point crossover mask for one variable half: a block of 0s followed
// by a block of 1s. tail covers the swapped low bits, head() the kept high bits.
struct CutMask {
    std::uint32_t tail = 0;
    int shift = 0;
    int half_bits = 0;

    std::uint32_t head() const {
        return ~tail & static_cast<std::uint32_t>(word_mask(half_bits));
    }
};

/// Builds the mask from a raw draw: shift = (top ceil(log2(half_bits + 1))
/// bits) mod half_bits, tail = (2^half_bits - 1) >> shift.
CutMask cut_mask(std::uint32_t draw, int half_bits);

/// Crosses one variable half of two parents: children keep their own head and
/// exchange tails.
std::pair<Word, Word> cross_half(Word a, Word b, const CutMask& mask);

/// Full crossover of a chromosome pair: both halves cross independently, at
/// cut points drawn from rp (upper half) and rq (lower half).
std::pair<Word, Word> crossover_pair(Word w1, Word w2, std::uint32_t rp, std::uint32_t rq, int m);

/// XOR mutation; identical to the AND/OR form (~z & rand) | (z & ~rand).
Word mutate(Word z, Word rand_word);

/// The Rand word the engine feeds to mutate(): a one-hot word flipping the
/// single bit indexed by the top ceil(log2(m)) bits of the draw, mod m.
Word mutation_word(std::uint32_t draw, int m);

/// Number of offspring mutated per generation: ceil(n * rate), rate in [0, 1].
int mutated_count(int n, double rate);

int ceil_log2(std::uint32_t v);

} // namespace gasim
