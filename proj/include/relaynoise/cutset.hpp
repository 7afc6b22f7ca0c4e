#pragma once

#include <relaynoise/channel.hpp>
#include <relaynoise/scalaropt.hpp>

#include <algorithm>
#include <cmath>

namespace relaynoise {

/// Correlations with |rho_z| >= 1 - this are rejected by the cut-set bound,
/// whose broadcast cut grows as 1 / (1 - rho_z^2).
inline constexpr double correlation_epsilon = 1e-12;

/// Bisection tolerance in rho_x for every max-min over input correlation.
inline constexpr double rho_x_tolerance = 1e-10;

/// The two cuts of the max-flow min-cut bound at a fixed input correlation.
struct CutTerms {
    double c1; // multiple-access cut {source, relay} -> destination
    double c2; // broadcast cut source -> {relay, destination}
};

namespace detail {

inline void require_bound_correlation(double rho_z)
{
    validate_rho_z(rho_z);
    if (std::abs(rho_z) >= 1.0 - correlation_epsilon) {
        throw correlation_singularity_error("cut-set bound is unbounded as |rho_z| -> 1");
    }
}

inline void require_rho_x(double rho_x)
{
    require(rho_x >= 0.0 && rho_x <= 1.0, "rho_x must lie in [0, 1]");
}

/// Combined SNR a source/relay pair delivers coherently to the destination.
inline double coherent_snr(double g31p1, double g32p2, double rho_x)
{
    return g31p1 + g32p2 + 2.0 * rho_x * std::sqrt(g31p1 * g32p2);
}

/// Joint relay+destination SNR per unit source power for the broadcast cut.
inline double broadcast_gain(const NormalizedGains& g, double rho_z)
{
    const double num = g.g21 + g.g31 - 2.0 * rho_z * std::sqrt(g.g21 * g.g31);
    return std::max(0.0, num) / (1.0 - rho_z * rho_z);
}

} // namespace detail

inline CutTerms ub_full_terms(const NormalizedGains& g, double rho_z, FullDuplexPowers p, double rho_x)
{
    validate(g);
    validate(p);
    detail::require_bound_correlation(rho_z);
    detail::require_rho_x(rho_x);

    const double c1 = gamma_fn(detail::coherent_snr(g.g31 * p.p1, g.g32 * p.p2, rho_x));
    const double c2 = gamma_fn(p.p1 * (1.0 - rho_x * rho_x) * detail::broadcast_gain(g, rho_z));
    return {c1, c2};
}

inline RateResult ub_full(const NormalizedGains& g, double rho_z, FullDuplexPowers p)
{
    ub_full_terms(g, rho_z, p, 0.0);
    const auto opt = scalaropt::maxmin_monotone([&](double rx) { return ub_full_terms(g, rho_z, p, rx).c1; },
                                                [&](double rx) { return ub_full_terms(g, rho_z, p, rx).c2; },
                                                scalaropt::Interval(0.0, 1.0), rho_x_tolerance);
    const auto terms = ub_full_terms(g, rho_z, p, opt.x);
    return {opt.value, opt.x, std::nullopt, terms.c1 <= terms.c2 ? "multiple-access" : "broadcast"};
}

inline CutTerms ub_half_terms(const NormalizedGains& g, double rho_z, const HalfDuplexPowers& p, double rho_x)
{
    validate(g);
    validate(p);
    detail::require_bound_correlation(rho_z);
    detail::require_rho_x(rho_x);

    const double a = p.alpha;
    const double c1 = a * gamma_fn(g.g31 * p.p1_1) +
                      (1.0 - a) * gamma_fn(detail::coherent_snr(g.g31 * p.p1_2, g.g32 * p.p2, rho_x));
    const double c2 = a * gamma_fn(detail::broadcast_gain(g, rho_z) * p.p1_1) +
                      (1.0 - a) * gamma_fn((1.0 - rho_x * rho_x) * g.g31 * p.p1_2);
    return {c1, c2};
}

inline RateResult ub_half(const NormalizedGains& g, double rho_z, const HalfDuplexPowers& p)
{
    ub_half_terms(g, rho_z, p, 0.0);
    const auto opt = scalaropt::maxmin_monotone([&](double rx) { return ub_half_terms(g, rho_z, p, rx).c1; },
                                                [&](double rx) { return ub_half_terms(g, rho_z, p, rx).c2; },
                                                scalaropt::Interval(0.0, 1.0), rho_x_tolerance);
    const auto terms = ub_half_terms(g, rho_z, p, opt.x);
    return {opt.value, opt.x, std::nullopt, terms.c1 <= terms.c2 ? "multiple-access" : "broadcast"};
}

} // namespace relaynoise
