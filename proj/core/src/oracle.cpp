#include "gasim/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "gasim/ffm.hpp"

namespace gasim {

OptimumReport exhaustive_optimum(const FfmTables& tables, SelectionMode mode,
                                 bool single_variable, int m) {
    validate_word_width(m);
    validate_tables(tables);
    if (tables.chromosome_bits() != m)
        throw std::invalid_argument("exhaustive_optimum: tables do not match m");
    const int half = m / 2;
    const std::uint64_t domain = single_variable ? (std::uint64_t{1} << half)
                                                 : (std::uint64_t{1} << m);
    if (domain > kOracleDomainCap)
        throw std::runtime_error("exhaustive_optimum: domain of " + std::to_string(domain) +
                                 " points exceeds 2^24; use a smaller m");

    OptimumReport report;
    report.evaluations = domain;
    bool have_best = false;
    for (std::uint64_t w = 0; w < domain; ++w) {
        const Word x = static_cast<Word>(w); // single-variable: upper half stays zero
        const FitnessValue y = ffm_evaluate(x, tables);
        const bool better = !have_best || (mode == SelectionMode::minimize
                                               ? y < report.best_fitness
                                               : y > report.best_fitness);
        if (better) {
            report.best_fitness = y;
            report.best_word = x;
            have_best = true;
        }
        // ties: smallest word wins, and the scan is in ascending word order
    }
    report.best_fitness_real = fitness_to_real(report.best_fitness, tables);
    const auto [hi, lo] = split(report.best_word, m);
    report.best_hi = hi;
    report.best_lo = lo;
    return report;
}

namespace {

// Most-obvious-style helpers, written independently of genetic_ops.

int bits_for(std::uint32_t values) {
    int b = 0;
    while ((std::uint32_t{1} << b) < values) ++b;
    return b;
}

} // namespace

std::vector<Word> naive_generation(const std::vector<Word>& population, const GaConfig& cfg,
                                   std::span<const std::uint32_t> draws) {
    const int n = cfg.n;
    const int m = cfg.m;
    const int half = m / 2;
    const int p = static_cast<int>(std::ceil(cfg.mutation_rate * n));
    const std::size_t expected = static_cast<std::size_t>(2 * n) + n + p;
    if (draws.size() != expected)
        throw std::runtime_error("naive_generation: expected " + std::to_string(expected) +
                                 " draws, got " + std::to_string(draws.size()));

    const FfmTables& t = *cfg.tables;
    const std::uint32_t half_mask = (half == 32) ? ~0u : ((std::uint32_t{1} << half) - 1);

    // FF: evaluate all chromosomes through the table pipeline
    std::vector<std::int64_t> y(n);
    for (int j = 0; j < n; ++j) {
        const std::uint32_t px = population[j] >> half;
        const std::uint32_t qx = population[j] & half_mask;
        const std::int64_t delta = t.alpha.entries[px] + t.beta.entries[qx];
        if (t.gamma.kind == GammaKind::passthrough) {
            std::int64_t v = delta;
            const std::int64_t max_v = (std::int64_t{1} << (t.fitness_fmt.total_bits - 1)) - 1;
            const std::int64_t min_v = -max_v - 1;
            if (v > max_v) v = max_v;
            if (v < min_v) v = min_v;
            y[j] = v;
        } else if (t.gamma.kind == GammaKind::table) {
            y[j] = t.gamma.table.entries[static_cast<std::size_t>(delta - t.gamma.table.addr_offset)];
        } else {
            const double d = static_cast<double>(delta) / std::pow(2.0, t.delta_fmt.frac_bits);
            const double g = t.gamma.fn(d) * std::pow(2.0, t.fitness_fmt.frac_bits);
            y[j] = std::llround(g);
        }
    }

    std::size_t next_draw = 0;
    const auto take = [&]() { return draws[next_draw++]; };

    // SF: tournament of two truncated indices
    const int idx_bits = bits_for(static_cast<std::uint32_t>(n));
    std::vector<Word> w(n);
    for (int j = 0; j < n; ++j) {
        const std::uint32_t i1 = take() >> (32 - idx_bits);
        const std::uint32_t i2 = take() >> (32 - idx_bits);
        bool pick_second;
        if (cfg.mode == SelectionMode::minimize)
            pick_second = y[i2] < y[i1];
        else
            pick_second = y[i2] > y[i1];
        w[j] = pick_second ? population[i2] : population[i1];
    }

    // CF: per-half single-point crossover with suffix-of-ones masks
    const int sel_bits = bits_for(static_cast<std::uint32_t>(half) + 1);
    std::vector<Word> z(n);
    for (int i = 0; i < n / 2; ++i) {
        const std::uint32_t shift_hi = (take() >> (32 - sel_bits)) % half;
        const std::uint32_t shift_lo = (take() >> (32 - sel_bits)) % half;
        const Word w1 = w[2 * i], w2 = w[2 * i + 1];
        const std::uint32_t s_hi = half_mask >> shift_hi;
        const std::uint32_t s_lo = half_mask >> shift_lo;
        const std::uint32_t p1 = w1 >> half, q1 = w1 & half_mask;
        const std::uint32_t p2 = w2 >> half, q2 = w2 & half_mask;
        const std::uint32_t head1_p = ~s_hi & half_mask & p1, tail1_p = s_hi & p1;
        const std::uint32_t head2_p = ~s_hi & half_mask & p2, tail2_p = s_hi & p2;
        const std::uint32_t head1_q = ~s_lo & half_mask & q1, tail1_q = s_lo & q1;
        const std::uint32_t head2_q = ~s_lo & half_mask & q2, tail2_q = s_lo & q2;
        z[2 * i] = ((head1_p | tail2_p) << half) | (head1_q | tail2_q);
        z[2 * i + 1] = ((head2_p | tail1_p) << half) | (head2_q | tail1_q);
    }

    // MF: flip one random bit of each of the first P offspring, via the
    // AND/OR form of the XOR
    const int pos_bits = bits_for(static_cast<std::uint32_t>(m));
    for (int v = 0; v < p; ++v) {
        const std::uint32_t pos = (take() >> (32 - pos_bits)) % static_cast<std::uint32_t>(m);
        const Word rand_word = Word{1} << pos;
        z[v] = (~z[v] & rand_word) | (z[v] & ~rand_word);
    }
    return z;
}

} // namespace gasim
