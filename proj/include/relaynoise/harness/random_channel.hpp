#pragma once

#include <relaynoise/channel.hpp>

#include <cmath>
#include <random>

namespace relaynoise::harness {

/// Log-uniform amplitudes in [0.3, 3] and noise variances in [0.5, 2], so
/// normalized gains span roughly two decades; rho_z uniform in [-max, max].
inline ChannelSpec random_channel(std::mt19937_64& rng, double max_abs_rho)
{
    std::uniform_real_distribution<double> amp(std::log(0.3), std::log(3.0));
    std::uniform_real_distribution<double> noise(std::log(0.5), std::log(2.0));
    std::uniform_real_distribution<double> rho(-max_abs_rho, max_abs_rho);
    ChannelSpec spec;
    spec.h21 = std::exp(amp(rng));
    spec.h32 = std::exp(amp(rng));
    spec.h31 = std::exp(amp(rng));
    spec.n1 = std::exp(noise(rng));
    spec.n = std::exp(noise(rng));
    spec.rho_z = rho(rng);
    return spec;
}

/// Uniform on (0, hi].
inline double random_positive(std::mt19937_64& rng, double hi)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return hi * (1.0 - u(rng));
}

} // namespace relaynoise::harness
