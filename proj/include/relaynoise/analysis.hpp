#pragma once

#include <relaynoise/channel.hpp>

#include <algorithm>
#include <cmath>
#include <optional>

namespace relaynoise {

enum class ChannelKind { degraded, reversely_degraded, general };

inline const char* to_string(ChannelKind k)
{
    switch (k) {
    case ChannelKind::degraded:
        return "degraded";
    case ChannelKind::reversely_degraded:
        return "reversely-degraded";
    case ChannelKind::general:
        return "general";
    }
    return "?";
}

struct ChannelClass {
    ChannelKind kind = ChannelKind::general;
    std::optional<double> witness_rho_z;
    // g21 == g31: both classifications hold at rho_z = 1; kind reports degraded.
    bool both_witnesses = false;
};

inline constexpr double default_classification_tolerance = 1e-9;

/// Degraded when rho_z = sqrt(g31/g21) with g21 >= g31 (DF meets the cut-set
/// bound); reversely degraded when rho_z = sqrt(g21/g31) with g21 <= g31
/// (direct transmission meets it).
inline ChannelClass classify(const NormalizedGains& g, double rho_z, double tol = default_classification_tolerance)
{
    validate(g);
    validate_rho_z(rho_z);
    detail::require(tol > 0.0, "classify: tolerance must be positive");

    ChannelClass out;
    if (g.g21 >= g.g31 && g.g21 > 0.0) {
        const double witness = std::sqrt(g.g31 / g.g21);
        if (std::abs(rho_z - witness) <= tol) {
            out.kind = ChannelKind::degraded;
            out.witness_rho_z = witness;
            out.both_witnesses = g.g21 == g.g31;
            return out;
        }
    }
    if (g.g21 <= g.g31 && g.g31 > 0.0) {
        const double witness = std::sqrt(g.g21 / g.g31);
        if (std::abs(rho_z - witness) <= tol) {
            out.kind = ChannelKind::reversely_degraded;
            out.witness_rho_z = witness;
        }
    }
    return out;
}

namespace detail {

inline void require_positive_direct_and_relay_gain(const NormalizedGains& g)
{
    validate(g);
    if (!(g.g21 > 0.0 && g.g31 > 0.0)) {
        throw degenerate_channel_error("gamma21 and gamma31 must both be positive");
    }
}

} // namespace detail

/// Turning point of the CF rate on [0, 1]: decreasing before, increasing after.
inline double rho_star(const NormalizedGains& g)
{
    detail::require_positive_direct_and_relay_gain(g);
    return std::min(std::sqrt(g.g31 / g.g21), std::sqrt(g.g21 / g.g31));
}

/// Positive correlation at which the CF rate climbs back to its rho_z = 0 value.
inline double rho_prime(const NormalizedGains& g)
{
    detail::require_positive_direct_and_relay_gain(g);
    return 2.0 * std::sqrt(g.g21 * g.g31) / (g.g21 + g.g31);
}

} // namespace relaynoise
