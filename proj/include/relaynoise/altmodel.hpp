#pragma once

// Independent-noise equivalent of the correlated-noise relay channel.
//
// Writing Z1 = rho_z sqrt(N1/N) Z + Z1' with Z1' independent of Z, the
// destination can strip the predictable part of the relay noise. What is
// left is a relay channel with independent noises, relay noise variance
// (1 - rho_z^2) N1, and source-relay amplitude |h21 - h31 rho_z sqrt(N1/N)|.
// CF and AF rates are unchanged by this transformation.

#include <relaynoise/channel.hpp>
#include <relaynoise/strategies.hpp>

#include <cmath>

namespace relaynoise {

struct AltChannelSpec {
    double h21_prime = 0.0;
    double n1_prime = 0.0; // 0 iff the source correlation was +-1
    double h32 = 0.0;
    double h31 = 0.0;
    double n = 1.0;
    double rho_z_source = 0.0;
};

/// Effective normalized source-relay gain (sqrt(g21) - rho_z sqrt(g31))^2 / (1 - rho_z^2).
inline double gamma21_prime(const NormalizedGains& g, double rho_z)
{
    validate(g);
    validate_rho_z(rho_z);
    if (std::abs(rho_z) >= 1.0) {
        throw correlation_singularity_error("gamma21_prime: infinite at |rho_z| = 1 (noiseless relay)");
    }
    const double v = std::sqrt(g.g21) - rho_z * std::sqrt(g.g31);
    return v * v / (1.0 - rho_z * rho_z);
}

inline AltChannelSpec to_alt(const ChannelSpec& spec)
{
    validate(spec);
    const double h21_prime = std::abs(std::abs(spec.h21) - std::abs(spec.h31) * spec.rho_z * std::sqrt(spec.n1 / spec.n));
    const double n1_prime = (1.0 - spec.rho_z * spec.rho_z) * spec.n1;
    return {h21_prime, std::max(0.0, n1_prime), spec.h32, spec.h31, spec.n, spec.rho_z};
}

/// Gains of the alternative model; g21 is undefined for a noiseless relay.
inline NormalizedGains normalize(const AltChannelSpec& alt)
{
    if (!(alt.n1_prime > 0.0)) {
        throw correlation_singularity_error("alternative model: relay is noiseless, gamma21' is infinite");
    }
    return {alt.h21_prime * alt.h21_prime / alt.n1_prime, alt.h32 * alt.h32 / alt.n, alt.h31 * alt.h31 / alt.n};
}

/// CF full-duplex rate written on the alternative model:
/// Gamma(g31 P1 + g21' P1 g32 P2 / (1 + g21' P1 + g31 P1 + g32 P2)).
inline RateResult cf_full_equivalent(const NormalizedGains& g, double rho_z, FullDuplexPowers p)
{
    validate(p);
    const double gp = gamma21_prime(g, rho_z);
    const double relayed = gp * p.p1 * g.g32 * p.p2 / (1.0 + gp * p.p1 + g.g31 * p.p1 + g.g32 * p.p2);
    return {gamma_fn(g.g31 * p.p1 + relayed), std::nullopt, std::nullopt, "alternative-model"};
}

/// CF half-duplex rate on the alternative model (independent noises,
/// source-relay gain g21').
inline RateResult cf_half_equivalent(const NormalizedGains& g, double rho_z, const HalfDuplexPowers& p)
{
    validate(p);
    const double gp = gamma21_prime(g, rho_z);
    const double a = p.alpha;
    const double second_phase = (1.0 - a) * gamma_fn(g.g31 * p.p1_2);
    if (!(g.g32 * p.p2 > 0.0)) {
        return {a * gamma_fn(g.g31 * p.p1_1) + second_phase, std::nullopt, std::nullopt, "alternative-model"};
    }
    const double budget = detail::half_compression_budget(g, p);
    const double nw_over_n1prime = (1.0 + gp * p.p1_1 + g.g31 * p.p1_1) / budget;
    const double snr = p.p1_1 * (g.g31 + gp / (1.0 + nw_over_n1prime));
    return {a * gamma_fn(snr) + second_phase, std::nullopt, std::nullopt, "alternative-model"};
}

/// AF rate computed on the alternative channel by maximum-ratio combining
/// of the two destination observations.
///
/// The relay scales its observation by beta with beta^2 (h21^2 P1 + N1) = P2,
/// i.e. the amplification is fixed by what the physical relay receives. In
/// the alternative model the noises are independent, so the MRC SNR is the
/// sum of the two branch SNRs. Valid for every rho_z in [-1, 1].
inline RateResult af_rate_alternative(const ChannelSpec& spec, double p1_1, double p2)
{
    validate(spec);
    detail::require(p1_1 >= 0.0 && p2 >= 0.0, "powers must be nonnegative");
    const AltChannelSpec alt = to_alt(spec);

    const double beta2 = p2 / (spec.h21 * spec.h21 * p1_1 + spec.n1);
    const double relay_path = alt.h32 * alt.h32 * beta2; // |h32 beta|^2
    const double direct_snr = alt.h31 * alt.h31 * p1_1 / alt.n;
    const double relayed_snr =
        relay_path * alt.h21_prime * alt.h21_prime * p1_1 / (relay_path * alt.n1_prime + alt.n);
    return {0.5 * gamma_fn(direct_snr + relayed_snr), std::nullopt, std::nullopt, "alternative-model"};
}

} // namespace relaynoise
