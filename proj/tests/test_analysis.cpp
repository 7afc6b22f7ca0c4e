#include <relaynoise/analysis.hpp>
#include <relaynoise/cutset.hpp>
#include <relaynoise/harness/random_channel.hpp>
#include <relaynoise/strategies.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace relaynoise;

namespace {
const NormalizedGains d04 = normalize(line_geometry(0.4));
const NormalizedGains d08 = normalize(line_geometry(0.8));
} // namespace

TEST(Classify, Examples)
{
    const auto a = classify(d04, 0.4);
    EXPECT_EQ(a.kind, ChannelKind::degraded);
    EXPECT_NEAR(*a.witness_rho_z, 0.4, 1e-15);
    EXPECT_EQ(classify({0.5, 1.0, 2.0}, 0.5).kind, ChannelKind::reversely_degraded);
    const auto c = classify(d04, 0.0);
    EXPECT_EQ(c.kind, ChannelKind::general);
    EXPECT_FALSE(c.witness_rho_z);
}

TEST(Classify, ToleranceAndTies)
{
    EXPECT_EQ(classify(d04, 0.4 + 1e-8).kind, ChannelKind::general);
    EXPECT_EQ(classify(d04, 0.4 + 1e-8, 1e-7).kind, ChannelKind::degraded);
    const auto tie = classify({2.0, 1.0, 2.0}, 1.0);
    EXPECT_EQ(tie.kind, ChannelKind::degraded);
    EXPECT_TRUE(tie.both_witnesses);
    EXPECT_THROW(classify(d04, 0.4, 0.0), domain_error);
}

TEST(RhoStar, Examples)
{
    EXPECT_NEAR(rho_star(d04), 0.4, 1e-15);
    EXPECT_EQ(rho_star({2.0, 1.0, 2.0}), 1.0);
    EXPECT_NEAR(rho_star(d08), 0.8, 1e-15);
    EXPECT_THROW(rho_star({0.0, 1.0, 1.0}), degenerate_channel_error);
    EXPECT_THROW(rho_prime({1.0, 1.0, 0.0}), degenerate_channel_error);
}

TEST(RhoPrime, Examples)
{
    EXPECT_NEAR(rho_prime(d04), 5.0 / 7.25, 1e-15);
    EXPECT_EQ(rho_prime({2.0, 1.0, 2.0}), 1.0);
    EXPECT_NEAR(rho_prime(d08), 2 * 1.25 / 2.5625, 1e-15);
}

TEST(RhoPrime, MatchesBisectionOnLevelCrossing)
{
    for (const auto& g : {d04, d08}) {
        const double level = cf_full(g, 0.0, {1, 1}).rate;
        double lo = rho_star(g), hi = 1.0 - 1e-12;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (cf_full(g, mid, {1, 1}).rate < level ? lo : hi) = mid;
        }
        EXPECT_NEAR(rho_prime(g), lo, 1e-9);
        EXPECT_NEAR(cf_full(g, rho_prime(g), {1, 1}).rate, level, 1e-9);
    }
}

TEST(RhoStar, CentralDifferenceChangesSign)
{
    const double h = 1e-5;
    for (const auto& g : {d04, d08, normalize(line_geometry(0.6))}) {
        const double s = rho_star(g);
        auto slope = [&](double r) {
            return (cf_full(g, r + h, {1, 1}).rate - cf_full(g, r - h, {1, 1}).rate) / (2 * h);
        };
        EXPECT_LE(std::abs(slope(s)), 1e-3);
        EXPECT_LT(slope(s - 1e-3), 0.0);
        EXPECT_GT(slope(s + 1e-3), 0.0);
    }
}

TEST(CapacityCases, RandomChannels)
{
    std::mt19937_64 rng(41);
    for (int k = 0; k < 300; ++k) {
        auto g = normalize(harness::random_channel(rng, 0.0));
        if (g.g21 < g.g31) {
            std::swap(g.g21, g.g31);
        }
        const FullDuplexPowers pf{harness::random_positive(rng, 10), harness::random_positive(rng, 10)};
        const HalfDuplexPowers ph{harness::random_positive(rng, 10), harness::random_positive(rng, 10),
                                  harness::random_positive(rng, 10), 0.1 + 0.8 * harness::random_positive(rng, 1)};
        const double w = std::sqrt(g.g31 / g.g21);
        EXPECT_NEAR(df_full(g, pf).rate, ub_full(g, w, pf).rate, 1e-8);
        EXPECT_NEAR(df_half(g, ph).rate, ub_half(g, w, ph).rate, 1e-8);

        const NormalizedGains r{g.g31, g.g32, g.g21};
        const double v = std::sqrt(r.g21 / r.g31);
        EXPECT_EQ(classify(r, v).kind, ChannelKind::reversely_degraded);
        EXPECT_NEAR(direct_full(r, pf.p1).rate, ub_full(r, v, pf).rate, 1e-8);
        EXPECT_NEAR(direct_half(r, ph).rate, ub_half(r, v, ph).rate, 1e-8);
    }
}

TEST(CapacityCases, ReverselyDegradedSpotChannel)
{
    const NormalizedGains g{0.5, 1.0, 2.0};
    EXPECT_NEAR(direct_full(g, 1).rate, ub_full(g, 0.5, {1, 1}).rate, 1e-8);
    EXPECT_NEAR(direct_half(g, {1, 1, 2, 0.5}).rate, ub_half(g, 0.5, {1, 1, 2, 0.5}).rate, 1e-8);
}
