#pragma once

#include <relaynoise/error.hpp>

#include <cmath>
#include <optional>
#include <string>

namespace relaynoise {

enum class Duplex { full, half };

/// Physical description of a three-node Gaussian relay channel.
///
/// Amplitudes enter every rate expression through their magnitudes only, so
/// the source-relay and source-destination links are implicitly taken to be
/// co-phased. rho_z is the correlation between the relay noise Z1 and the
/// destination noise Z.
struct ChannelSpec {
    double h21 = 1.0;
    double h32 = 1.0;
    double h31 = 1.0;
    double n1 = 1.0;
    double n = 1.0;
    double rho_z = 0.0;
};

/// SNR per unit transmit power on each link.
struct NormalizedGains {
    double g21 = 0.0;
    double g32 = 0.0;
    double g31 = 0.0;
};

struct FullDuplexPowers {
    double p1 = 1.0;
    double p2 = 1.0;
};

/// Time-division half duplex: the relay listens for a fraction alpha of the
/// slot, then transmits for the remaining 1 - alpha.
struct HalfDuplexPowers {
    double p1_1 = 1.0; // source, listening phase
    double p1_2 = 1.0; // source, relay-transmit phase
    double p2 = 2.0;   // relay, relay-transmit phase
    double alpha = 0.5;
};

struct RateResult {
    double rate = 0.0;                 // bits per channel use
    std::optional<double> rho_x_star;  // set iff a max over rho_x was taken
    std::optional<double> alpha_star;  // set iff alpha was optimized
    std::string branch;                // active min-term or closed-form branch
};

inline void validate(const ChannelSpec& spec)
{
    detail::require(std::isfinite(spec.h21) && std::isfinite(spec.h32) && std::isfinite(spec.h31),
                    "channel amplitudes must be finite");
    detail::require(spec.n1 > 0.0 && std::isfinite(spec.n1), "relay noise variance N1 must be positive");
    detail::require(spec.n > 0.0 && std::isfinite(spec.n), "destination noise variance N must be positive");
    detail::require(spec.rho_z >= -1.0 && spec.rho_z <= 1.0, "rho_z must lie in [-1, 1]");
}

inline void validate(const NormalizedGains& g)
{
    detail::require(g.g21 >= 0.0 && g.g32 >= 0.0 && g.g31 >= 0.0, "normalized gains must be nonnegative");
    detail::require(std::isfinite(g.g21) && std::isfinite(g.g32) && std::isfinite(g.g31),
                    "normalized gains must be finite");
}

inline void validate_rho_z(double rho_z)
{
    detail::require(rho_z >= -1.0 && rho_z <= 1.0, "rho_z must lie in [-1, 1]");
}

inline void validate(const FullDuplexPowers& p)
{
    detail::require(p.p1 >= 0.0 && p.p2 >= 0.0, "powers must be nonnegative");
    detail::require(std::isfinite(p.p1) && std::isfinite(p.p2), "powers must be finite");
}

inline void validate(const HalfDuplexPowers& p)
{
    detail::require(p.p1_1 >= 0.0 && p.p1_2 >= 0.0 && p.p2 >= 0.0, "powers must be nonnegative");
    detail::require(std::isfinite(p.p1_1) && std::isfinite(p.p1_2) && std::isfinite(p.p2),
                    "powers must be finite");
    detail::require(p.alpha > 0.0 && p.alpha < 1.0, "alpha must lie in (0, 1)");
}

/// Gaussian rate function 0.5 * log2(1 + x), in bits per channel use.
inline double gamma_fn(double x)
{
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw domain_error("gamma_fn: argument must be finite and nonnegative");
    }
    return 0.5 * std::log2(1.0 + x);
}

inline NormalizedGains normalize(const ChannelSpec& spec)
{
    validate(spec);
    return {spec.h21 * spec.h21 / spec.n1, spec.h32 * spec.h32 / spec.n, spec.h31 * spec.h31 / spec.n};
}

/// Source, relay and destination on a line with unit source-destination
/// distance; amplitude is the inverse of distance and both noises are unit.
inline ChannelSpec line_geometry(double d, double rho_z = 0.0)
{
    if (!(d > 0.0 && d < 1.0)) {
        throw domain_error("line_geometry: relay position d must lie in (0, 1)");
    }
    validate_rho_z(rho_z);
    return {1.0 / d, 1.0 / (1.0 - d), 1.0, 1.0, 1.0, rho_z};
}

inline const char* to_string(Duplex mode)
{
    return mode == Duplex::full ? "full" : "half";
}

} // namespace relaynoise
