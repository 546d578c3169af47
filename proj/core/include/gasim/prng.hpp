#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gasim {

// 32-bit Galois LFSR over x^32 + x^22 + x^2 + 1, stepped right. The feedback
// mask has bit (i-1) set for each nonzero coefficient x^i, i in {2, 22, 32}.
inline constexpr std::uint32_t kLfsrFeedbackMask = 0x80200002u;

/// One Galois right-shift step: the output bit is the LSB; when it is 1 the
/// shifted state is XORed with the feedback mask. Nonzero in, nonzero out.
/// Throws std::invalid_argument on the absorbing all-zero state.
std::uint32_t lfsr_step(std::uint32_t state);

// A single shift-register unit. One next() per draw; the draw is the full
// 32-bit state after the step.
class Lfsr32 {
public:
    explicit Lfsr32(std::uint32_t seed);

    std::uint32_t next() {
        state_ = lfsr_step(state_);
        return state_;
    }
    std::uint32_t state() const { return state_; }

    bool operator==(const Lfsr32&) const = default;

private:
    std::uint32_t state_;
};

/// The `bits` most-significant bits of `v`, as an unsigned value in [0, 2^bits).
/// bits must be in [1, 32].
std::uint32_t top_bits(std::uint32_t v, int bits);

// Deterministic expansion of one 64-bit master seed into nonzero, pairwise
// distinct 32-bit unit seeds. Slot roles are assigned by the consumer (the
// engine documents its slot order).
struct SeedPlan {
    std::uint64_t master_seed = 0;
    std::vector<std::uint32_t> seeds;
};

/// Iterates a 64-bit mixing permutation (add 0x9E3779B97F4A7C15, then
/// xor-shift-multiply with 0xBF58476D1CE4E5B9 / 0x94D049BB133111EB and shifts
/// 30/27/31), taking the low 32 bits of each output and skipping zero and
/// duplicates. Pure function of (master, count).
SeedPlan expand_seeds(std::uint64_t master, std::size_t count);

} // namespace gasim
