#include "gasim/prng.hpp"

#include <stdexcept>
#include <unordered_set>

namespace gasim {

std::uint32_t lfsr_step(std::uint32_t state) {
    if (state == 0)
        throw std::invalid_argument("lfsr_step: all-zero state is absorbing");
    const std::uint32_t out = state & 1u;
    state >>= 1;
    if (out) state ^= kLfsrFeedbackMask;
    return state;
}

Lfsr32::Lfsr32(std::uint32_t seed) : state_(seed) {
    if (seed == 0)
        throw std::invalid_argument("Lfsr32: seed must be nonzero");
}

std::uint32_t top_bits(std::uint32_t v, int bits) {
    if (bits < 1 || bits > 32)
        throw std::invalid_argument("top_bits: bit count must be in [1, 32]");
    return v >> (32 - bits);
}

namespace {

std::uint64_t mix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

SeedPlan expand_seeds(std::uint64_t master, std::size_t count) {
    if (count < 1)
        throw std::invalid_argument("expand_seeds: count must be >= 1");
    SeedPlan plan;
    plan.master_seed = master;
    plan.seeds.reserve(count);
    std::unordered_set<std::uint32_t> used;
    used.reserve(count * 2);
    std::uint64_t state = master;
    while (plan.seeds.size() < count) {
        const auto v = static_cast<std::uint32_t>(mix64(state));
        if (v == 0 || !used.insert(v).second) continue;
        plan.seeds.push_back(v);
    }
    return plan;
}

} // namespace gasim
