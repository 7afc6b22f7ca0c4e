#pragma once

// Optimal power allocation for CF (full duplex) and AF under a total power
// budget, and the relay-uses-its-whole-budget certificate.
//
// Both objectives reduce, after substituting the active budget constraint
// P2 = T - P1, to
//
//     snr(x) = g31 x + A x (T - x) / (B + C x),     0 < x <= T,
//
// which is concave in x because (B + C x) > 0 on the interval and
// -A (B + C T) <= 0. The stationary point solves a quadratic whose
// admissible root is
//
//     x* = (u - B) / C,   u^2 = A B (B + C T) / (A - g31 C),
//
// evaluated here as B (A T + g31 B) / ((A - g31 C)(u + B)), the same root
// with the cancellation in (u - B) removed.

#include <relaynoise/altmodel.hpp>
#include <relaynoise/channel.hpp>
#include <relaynoise/strategies.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace relaynoise {

enum class AllocationBranch { interior, boundary_source_all, boundary_source_epsilon };

inline const char* to_string(AllocationBranch b)
{
    switch (b) {
    case AllocationBranch::interior:
        return "interior";
    case AllocationBranch::boundary_source_all:
        return "boundary-source-all";
    case AllocationBranch::boundary_source_epsilon:
        return "boundary-source-epsilon";
    }
    return "?";
}

struct AllocationResult {
    double p1_star = 0.0; // source power (P1, or P1^(1) for AF)
    double p2_star = 0.0; // relay power
    double rate = 0.0;
    AllocationBranch branch = AllocationBranch::boundary_source_all;
    double condition_value = 0.0; // lhs - rhs of the interior test; > 0 selects interior
};

/// Relative size of the "arbitrarily small" source power used when CF
/// should hand the whole budget to the relay.
inline constexpr double source_epsilon_fraction = 1e-6;

/// Interior-vs-boundary ties and degenerate quadratics are judged at this level.
inline constexpr double allocation_tie_tolerance = 1e-12;

namespace detail {

struct RatioObjective {
    double g31;
    double a;
    double b;
    double c;
    double budget;

    double operator()(double x) const { return g31 * x + a * x * (budget - x) / (b + c * x); }

    double stationary_point() const
    {
        if (std::abs(c) < allocation_tie_tolerance) {
            // linear first-order condition
            return (g31 * b + a * budget) / (2.0 * a);
        }
        const double denom = a - g31 * c;
        const double u = std::sqrt(a * b * (b + c * budget) / denom);
        return b * (a * budget + g31 * b) / (denom * (u + b));
    }
};

inline void require_budget(double pt)
{
    if (!(pt > 0.0) || !std::isfinite(pt)) {
        throw domain_error("total power budget must be positive and finite");
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Individual relay budget.

struct RelayBudgetCertificate {
    std::vector<double> p2_grid;
    std::vector<double> rates;
    double worst_drop = 0.0; // max over i of rate[i] - rate[i+1], <= 0 when nondecreasing
    bool nondecreasing = true;
};

/// Samples rate(P2) on an increasing grid over [0, p2_budget] and records
/// whether the sequence ever decreases.
inline RelayBudgetCertificate relay_uses_full_budget_check(const std::function<double(double)>& rate_of_p2,
                                                           double p2_budget, std::size_t points = 41)
{
    detail::require(p2_budget >= 0.0 && std::isfinite(p2_budget), "relay budget must be finite and nonnegative");
    detail::require(points >= 2, "need at least two grid points");
    RelayBudgetCertificate cert;
    cert.worst_drop = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points; ++i) {
        const double p2 = (i + 1 == points) ? p2_budget : p2_budget * static_cast<double>(i) / (points - 1);
        cert.p2_grid.push_back(p2);
        cert.rates.push_back(rate_of_p2(p2));
        if (i > 0) {
            cert.worst_drop = std::max(cert.worst_drop, cert.rates[i - 1] - cert.rates[i]);
        }
    }
    cert.nondecreasing = cert.worst_drop <= 0.0;
    return cert;
}

inline RelayBudgetCertificate relay_uses_full_budget_check(const NormalizedGains& g, double rho_z,
                                                           FullDuplexPowers base, double p2_budget,
                                                           std::size_t points = 41)
{
    return relay_uses_full_budget_check(
        [&](double p2) { return cf_full(g, rho_z, {base.p1, p2}).rate; }, p2_budget, points);
}

// ---------------------------------------------------------------------------
// CF full duplex, P1 + P2 <= Pt.

inline AllocationResult cf_full_alloc(const NormalizedGains& g, double rho_z, double pt)
{
    validate(g);
    validate_rho_z(rho_z);
    detail::require_budget(pt);

    AllocationResult out;
    if (detail::fully_correlated(rho_z)) {
        // Rate is Gamma(g31 P1 + g32 P2): linear in the split.
        out.condition_value = g.g32 - g.g31;
        const bool relay_better = out.condition_value > 0.0 && !detail::innovation_vanishes(g, rho_z);
        if (relay_better) {
            out.p1_star = source_epsilon_fraction * pt;
            out.branch = AllocationBranch::boundary_source_epsilon;
        } else {
            out.p1_star = pt;
            out.branch = AllocationBranch::boundary_source_all;
        }
    } else {
        const double gp = gamma21_prime(g, rho_z);
        out.condition_value = gp * (g.g32 - g.g31) * pt - g.g31 * (1.0 + g.g31 * pt);
        if (out.condition_value > allocation_tie_tolerance) {
            const detail::RatioObjective snr{g.g31, gp * g.g32, 1.0 + g.g32 * pt, gp + g.g31 - g.g32, pt};
            out.p1_star = std::clamp(snr.stationary_point(), 0.0, pt);
            out.branch = AllocationBranch::interior;
        } else {
            out.p1_star = pt;
            out.branch = AllocationBranch::boundary_source_all;
        }
    }
    out.p2_star = pt - out.p1_star;
    out.rate = cf_full(g, rho_z, {out.p1_star, out.p2_star}).rate;
    return out;
}

// ---------------------------------------------------------------------------
// AF, P1^(1) + P2 <= 2 Pt (each node is active for half the slot).

/// Optimal AF split maximizing af_rate. At rho_z = 0 and rho_z = +-1 this is
/// the familiar independent-noise closed form; for 0 < |rho_z| < 1 the coefficients
/// come from the MRC rate itself (see af_alloc_substituted for the variant that
/// substitutes gamma21' into the independent-noise solution).
inline AllocationResult af_alloc(const NormalizedGains& g, double rho_z, double pt)
{
    validate(g);
    validate_rho_z(rho_z);
    detail::require_budget(pt);

    const double total = 2.0 * pt;
    const double s = detail::fully_correlated(rho_z) ? 0.0 : 1.0 - rho_z * rho_z;
    const double innovation = detail::innovation_gain(g, rho_z);

    AllocationResult out;
    // innovation >= (g31 / g32)(g21 + 1 / (2 Pt)), multiplied through by g32.
    out.condition_value = g.g32 * innovation - g.g31 * (g.g21 + 1.0 / total);
    if (out.condition_value > allocation_tie_tolerance) {
        const detail::RatioObjective snr{g.g31, g.g32 * innovation, 1.0 + total * g.g32 * s, g.g21 - g.g32 * s,
                                         total};
        out.p1_star = std::clamp(snr.stationary_point(), 0.0, total);
        out.branch = AllocationBranch::interior;
    } else {
        out.p1_star = total;
        out.branch = AllocationBranch::boundary_source_all;
    }
    out.p2_star = total - out.p1_star;
    out.rate = af_rate(g, rho_z, out.p1_star, out.p2_star).rate;
    return out;
}

/// The independent-noise AF allocation with g21 replaced by gamma21',
/// evaluated verbatim (including its interior test, which compares gamma21'
/// against g21). Diagnostic only: for 0 < |rho_z| < 1 it does not maximize
/// af_rate. Throws when that root is not real.
inline AllocationResult af_alloc_substituted(const NormalizedGains& g, double rho_z, double pt)
{
    validate(g);
    detail::require_budget(pt);
    const double gp = gamma21_prime(g, rho_z);

    AllocationResult out;
    out.condition_value = gp - g.g31 / g.g32 * (g.g21 + 1.0 / (2.0 * pt));
    if (out.condition_value >= 0.0) {
        const double radicand = g.g32 * gp * (1.0 + 2.0 * g.g32 * pt) * (1.0 + 2.0 * gp * pt) /
                                (g.g32 * gp - g.g31 * gp + g.g31 * g.g32);
        if (!(radicand >= 0.0)) {
            throw domain_error("af_alloc_substituted: closed form has no real root here");
        }
        out.p1_star = (1.0 + 2.0 * g.g32 * pt - std::sqrt(radicand)) / (g.g32 - gp);
        out.branch = AllocationBranch::interior;
    } else {
        out.p1_star = 2.0 * pt;
        out.branch = AllocationBranch::boundary_source_all;
    }
    out.p2_star = 2.0 * pt - out.p1_star;
    if (out.p1_star >= 0.0 && out.p2_star >= 0.0) {
        out.rate = af_rate(g, rho_z, out.p1_star, out.p2_star).rate;
    } else {
        out.rate = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

} // namespace relaynoise
