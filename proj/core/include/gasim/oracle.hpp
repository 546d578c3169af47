#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gasim/engine.hpp"

namespace gasim {

// Ground truth from brute force over the quantized domain.
struct OptimumReport {
    Word best_word = 0;
    FitnessValue best_fitness = 0;
    double best_fitness_real = 0.0;
    Word best_hi = 0;
    Word best_lo = 0;
    std::uint64_t evaluations = 0;
};

inline constexpr std::uint64_t kOracleDomainCap = std::uint64_t{1} << 24;

/// Evaluates every admissible chromosome (the upper half pinned to zero for
/// single-variable problems) and returns the argbest under the mode, ties
/// broken by the smallest word value. Throws std::runtime_error when the
/// domain exceeds 2^24 points.
OptimumReport exhaustive_optimum(const FfmTables& tables, SelectionMode mode,
                                 bool single_variable, int m);

/// Line-by-line transcription of the generation loop in the most obvious
/// style, fed the engine's recorded draws. Must be bit-identical to
/// step_generation. Throws std::runtime_error on a draw-count mismatch.
std::vector<Word> naive_generation(const std::vector<Word>& population, const GaConfig& cfg,
                                   std::span<const std::uint32_t> draws);

} // namespace gasim
