#pragma once

#include <relaynoise/allocator.hpp>
#include <relaynoise/scalaropt.hpp>
#include <relaynoise/strategies.hpp>

#include <cstddef>
#include <string>

namespace relaynoise::harness {

/// Grid-search split of a total budget for strategies without a closed form.
struct NumericAllocation {
    double p1_star = 0.0;
    double p2_star = 0.0;
    double rate = 0.0;
    std::size_t grid_points = 0;
    std::string label = "numerical-only";
};

/// DF full duplex, P1 + P2 <= Pt.
inline NumericAllocation df_full_alloc_numeric(const NormalizedGains& g, double pt, std::size_t points = 20001)
{
    relaynoise::detail::require_budget(pt);
    const auto best = scalaropt::argmax_grid([&](double x) { return df_full(g, {x, pt - x}).rate; },
                                             scalaropt::Interval(0.0, pt), points);
    return {best.x, pt - best.x, best.value, points};
}

/// CF half duplex with alpha = 1/2, source silent in the relay phase,
/// P1^(1) + P2 <= 2 Pt (the same budget as AF).
inline NumericAllocation cf_half_alloc_numeric(const NormalizedGains& g, double rho_z, double pt,
                                               std::size_t points = 20001)
{
    relaynoise::detail::require_budget(pt);
    const double total = 2.0 * pt;
    const auto best = scalaropt::argmax_grid(
        [&](double x) { return cf_half(g, rho_z, HalfDuplexPowers{x, 0.0, total - x, 0.5}).rate; },
        scalaropt::Interval(0.0, total), points);
    return {best.x, total - best.x, best.value, points};
}

} // namespace relaynoise::harness
