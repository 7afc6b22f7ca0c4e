#pragma once

#include <relaynoise/channel.hpp>
#include <relaynoise/cutset.hpp>
#include <relaynoise/scalaropt.hpp>

#include <algorithm>
#include <cmath>

namespace relaynoise {

/// Wyner-Ziv quantization noise the relay adds when compressing for CF.
struct QuantizationNoise {
    double n_w = 0.0;
    Duplex mode = Duplex::full;
};

namespace detail {

/// |rho_z| beyond this switches CF to its fully-correlated limit.
inline constexpr double full_correlation_switch = 1.0 - 1e-12;

inline bool fully_correlated(double rho_z)
{
    return std::abs(rho_z) > full_correlation_switch;
}

/// (rho_z sqrt(g31) - sqrt(g21))^2: the part of the relay observation the
/// destination cannot predict from its own noise.
inline double innovation_gain(const NormalizedGains& g, double rho_z)
{
    const double v = rho_z * std::sqrt(g.g31) - std::sqrt(g.g21);
    return v * v;
}

/// True when the relay observation is, in the limit, a scaled copy of the
/// destination observation and carries no new information.
inline bool innovation_vanishes(const NormalizedGains& g, double rho_z)
{
    const double scale = std::sqrt(g.g21) + std::sqrt(g.g31);
    return std::abs(rho_z * std::sqrt(g.g31) - std::sqrt(g.g21)) <= 1e-12 * scale;
}

/// Relay-phase rate expansion for half-duplex CF:
/// (1 + g31 P1_1) ((1 + g32 P2 / (1 + g31 P1_2))^((1 - alpha) / alpha) - 1).
inline double half_compression_budget(const NormalizedGains& g, const HalfDuplexPowers& p)
{
    const double y = g.g32 * p.p2 / (1.0 + g.g31 * p.p1_2);
    const double exponent = (1.0 - p.alpha) / p.alpha;
    return (1.0 + g.g31 * p.p1_1) * std::expm1(exponent * std::log1p(y));
}

/// (1 - rho_z^2) + (g21 + g31 - 2 rho_z sqrt(g21 g31)) P: relay observation
/// variance conditioned on the destination's, per unit N1.
inline double conditional_relay_variance(const NormalizedGains& g, double rho_z, double p)
{
    const double s = std::max(0.0, 1.0 - rho_z * rho_z);
    const double cross = std::max(0.0, g.g21 + g.g31 - 2.0 * rho_z * std::sqrt(g.g21 * g.g31));
    return s + cross * p;
}

} // namespace detail

inline RateResult direct_full(const NormalizedGains& g, double p1)
{
    validate(g);
    detail::require(p1 >= 0.0 && std::isfinite(p1), "power must be finite and nonnegative");
    return {gamma_fn(g.g31 * p1), std::nullopt, std::nullopt, "direct"};
}

inline RateResult direct_half(const NormalizedGains& g, const HalfDuplexPowers& p)
{
    validate(g);
    validate(p);
    const double r = p.alpha * gamma_fn(g.g31 * p.p1_1) + (1.0 - p.alpha) * gamma_fn(g.g31 * p.p1_2);
    return {r, std::nullopt, std::nullopt, "direct"};
}

// ---------------------------------------------------------------------------
// Decode-and-forward. The relay decodes fully, so noise correlation never
// enters these rates.

inline RateResult df_full(const NormalizedGains& g, FullDuplexPowers p)
{
    validate(g);
    validate(p);
    auto relay_decode = [&](double rx) { return gamma_fn(g.g21 * p.p1 * (1.0 - rx * rx)); };
    auto cooperative = [&](double rx) { return gamma_fn(detail::coherent_snr(g.g31 * p.p1, g.g32 * p.p2, rx)); };
    const auto opt =
        scalaropt::maxmin_monotone(cooperative, relay_decode, scalaropt::Interval(0.0, 1.0), rho_x_tolerance);
    const char* branch = relay_decode(opt.x) <= cooperative(opt.x) ? "relay-decoding" : "cooperative";
    return {opt.value, opt.x, std::nullopt, branch};
}

inline RateResult df_half(const NormalizedGains& g, const HalfDuplexPowers& p)
{
    validate(g);
    validate(p);
    const double a = p.alpha;
    auto relay_decode = [&](double rx) {
        return a * gamma_fn(g.g21 * p.p1_1) + (1.0 - a) * gamma_fn((1.0 - rx * rx) * g.g31 * p.p1_2);
    };
    auto cooperative = [&](double rx) {
        return a * gamma_fn(g.g31 * p.p1_1) +
               (1.0 - a) * gamma_fn(detail::coherent_snr(g.g31 * p.p1_2, g.g32 * p.p2, rx));
    };
    const auto opt =
        scalaropt::maxmin_monotone(cooperative, relay_decode, scalaropt::Interval(0.0, 1.0), rho_x_tolerance);
    const char* branch = relay_decode(opt.x) <= cooperative(opt.x) ? "relay-decoding" : "cooperative";
    return {opt.value, opt.x, std::nullopt, branch};
}

// ---------------------------------------------------------------------------
// Compress-and-forward.

inline QuantizationNoise nw_full(const NormalizedGains& g, double rho_z, FullDuplexPowers p, double n1 = 1.0)
{
    validate(g);
    validate(p);
    validate_rho_z(rho_z);
    detail::require(n1 > 0.0, "N1 must be positive");
    const double relay_link = g.g32 * p.p2;
    if (!(relay_link > 0.0)) {
        throw no_relay_channel_error("nw_full: gamma32 * P2 must be positive");
    }
    return {n1 * detail::conditional_relay_variance(g, rho_z, p.p1) / relay_link, Duplex::full};
}

inline QuantizationNoise nw_half(const NormalizedGains& g, double rho_z, const HalfDuplexPowers& p, double n1 = 1.0)
{
    validate(g);
    validate(p);
    validate_rho_z(rho_z);
    detail::require(n1 > 0.0, "N1 must be positive");
    if (!(g.g32 * p.p2 > 0.0)) {
        throw no_relay_channel_error("nw_half: gamma32 * P2 must be positive");
    }
    const double budget = detail::half_compression_budget(g, p);
    if (!(budget > 0.0)) {
        throw no_relay_channel_error("nw_half: relay phase carries no compression rate");
    }
    return {n1 * detail::conditional_relay_variance(g, rho_z, p.p1_1) / budget, Duplex::half};
}

inline RateResult cf_full(const NormalizedGains& g, double rho_z, FullDuplexPowers p)
{
    validate(g);
    validate(p);
    validate_rho_z(rho_z);

    if (!(g.g32 * p.p2 > 0.0)) {
        auto r = direct_full(g, p.p1);
        r.branch = "direct (no relay link)";
        return r;
    }
    if (detail::fully_correlated(rho_z)) {
        // Noiseless relay in the independent-noise equivalent.
        if (p.p1 == 0.0 || detail::innovation_vanishes(g, rho_z)) {
            auto r = direct_full(g, p.p1);
            r.branch = "fully-correlated (no innovation)";
            return r;
        }
        return {gamma_fn(g.g31 * p.p1 + g.g32 * p.p2), std::nullopt, std::nullopt, "fully-correlated"};
    }

    const double s = 1.0 - rho_z * rho_z;
    const double nw_over_n1 = nw_full(g, rho_z, p).n_w;
    const double snr = p.p1 * (g.g31 + detail::innovation_gain(g, rho_z) / (s + nw_over_n1));
    return {gamma_fn(snr), std::nullopt, std::nullopt, "compress"};
}

inline RateResult cf_half(const NormalizedGains& g, double rho_z, const HalfDuplexPowers& p)
{
    validate(g);
    validate(p);
    validate_rho_z(rho_z);

    const double a = p.alpha;
    const double second_phase = (1.0 - a) * gamma_fn(g.g31 * p.p1_2);
    const double budget = g.g32 * p.p2 > 0.0 ? detail::half_compression_budget(g, p) : 0.0;
    if (!(budget > 0.0)) {
        auto r = direct_half(g, p);
        r.branch = "direct (no relay link)";
        return r;
    }
    if (detail::fully_correlated(rho_z)) {
        // 1 - rho_z^2 = 0 with N_w-half kept at its rho_z = +-1 value; the
        // innovation gain cancels against the quantization noise and
        // a Gamma(g31 P1_1 + budget) + second_phase telescopes to the form below.
        if (p.p1_1 == 0.0 || detail::innovation_vanishes(g, rho_z)) {
            auto r = direct_half(g, p);
            r.branch = "fully-correlated (no innovation)";
            return r;
        }
        const double r = a * gamma_fn(g.g31 * p.p1_1) + (1.0 - a) * gamma_fn(g.g31 * p.p1_2 + g.g32 * p.p2);
        return {r, std::nullopt, std::nullopt, "fully-correlated"};
    }

    const double s = 1.0 - rho_z * rho_z;
    const double nw_over_n1 = nw_half(g, rho_z, p).n_w;
    const double snr = p.p1_1 * (g.g31 + detail::innovation_gain(g, rho_z) / (s + nw_over_n1));
    return {a * gamma_fn(snr) + second_phase, std::nullopt, std::nullopt, "compress"};
}

// ---------------------------------------------------------------------------
// Amplify-and-forward: half duplex with alpha fixed at 1/2, source silent in
// the relay phase, MRC at the destination.

inline RateResult af_rate(const NormalizedGains& g, double rho_z, double p1_1, double p2)
{
    validate(g);
    validate_rho_z(rho_z);
    detail::require(p1_1 >= 0.0 && p2 >= 0.0 && std::isfinite(p1_1) && std::isfinite(p2),
                    "powers must be finite and nonnegative");
    const double s = std::max(0.0, 1.0 - rho_z * rho_z);
    const double relayed =
        g.g32 * p2 * detail::innovation_gain(g, rho_z) * p1_1 / (1.0 + g.g21 * p1_1 + g.g32 * p2 * s);
    return {0.5 * gamma_fn(g.g31 * p1_1 + relayed), std::nullopt, std::nullopt, "amplify"};
}

} // namespace relaynoise
