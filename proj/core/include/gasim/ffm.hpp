#pragma once

#include <cstdint>

#include "gasim/rom.hpp"
#include "gasim/word.hpp"

namespace gasim {

// Fitness values travel as signed scaled integers in the fitness format
// (value = FitnessValue / 2^frac_bits).
using FitnessValue = std::int64_t;

/// The fitness pipeline: split the chromosome, look up both variable tables,
/// add into the (c+1)-bit delta, and apply the gamma stage. Bit-deterministic
/// and pure; any number of evaluations of one population may run in parallel.
FitnessValue ffm_evaluate(Word x, const FfmTables& t);

/// Decoded real value of a fitness word.
double fitness_to_real(FitnessValue y, const FfmTables& t);

} // namespace gasim
