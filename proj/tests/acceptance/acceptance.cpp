#include "../oracle.hpp"

#include <relaynoise/relaynoise.hpp>
#include <relaynoise/harness/random_channel.hpp>
#include <relaynoise/harness/sweep.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

using namespace relaynoise;
namespace hn = relaynoise::harness;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            if (!detail.empty()) {
                detail += "; ";
            }
            detail += what;
        }
    }
};

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Every (bound, achievable) pair seen by criteria 1-8.
struct DominanceLog {
    std::size_t samples = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::string where;

    void add(double bound, double achievable, const std::string& tag)
    {
        ++samples;
        const double slack = bound + 1e-9 - achievable;
        if (slack < worst) {
            worst = slack;
            where = tag;
        }
    }

    void row(const hn::SweepRow& r, const std::string& tag)
    {
        if (r.ub) {
            add(*r.ub, *r.df, tag + " df");
            add(*r.ub, *r.cf, tag + " cf");
            add(*r.ub, *r.direct, tag + " direct");
        }
        if (r.af && r.ub_af) {
            add(*r.ub_af, *r.af, tag + " af");
        }
    }
} dominance;

const HalfDuplexPowers reference_half{1, 1, 2, 0.5};
const std::vector<double> reference_distances{0.2, 0.4, 0.6, 0.8};

double grid(double lo, double hi, int i, int n)
{
    return i == 0 ? lo : i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1);
}

// 1. Decode-and-forward meets the cut-set bound on degraded channels.
Outcome degraded_capacity()
{
    Outcome o;
    for (const auto& [d, rho] : {std::pair{0.4, 0.4}, std::pair{0.8, 0.8}}) {
        const auto g = normalize(line_geometry(d));
        const double ub = ub_full(g, rho, {1, 1}).rate;
        const double df = df_full(g, {1, 1}).rate;
        const double ubh = ub_half(g, rho, reference_half).rate;
        const double dfh = df_half(g, reference_half).rate;
        o.check(std::abs(ub - df) <= 1e-8, "full d=" + fmt(d) + " gap " + fmt(ub - df));
        o.check(std::abs(ubh - dfh) <= 1e-8, "half d=" + fmt(d) + " gap " + fmt(ubh - dfh));
        dominance.add(ub, df, "c1 full");
        dominance.add(ubh, dfh, "c1 half");
    }
    return o;
}

// 2. Direct transmission meets the bound on reversely degraded channels.
Outcome reversely_degraded_capacity()
{
    Outcome o;
    const NormalizedGains g{0.5, 1.0, 2.0};
    const double ub = ub_full(g, 0.5, {1, 1}).rate;
    const double direct = direct_full(g, 1).rate;
    const double ubh = ub_half(g, 0.5, reference_half).rate;
    const double directh = direct_half(g, reference_half).rate;
    o.check(std::abs(ub - direct) <= 1e-8, "full gap " + fmt(ub - direct));
    o.check(std::abs(ubh - directh) <= 1e-8, "half gap " + fmt(ubh - directh));
    dominance.add(ub, direct, "c2 full");
    dominance.add(ubh, directh, "c2 half");
    dominance.add(ub, cf_full(g, 0.5, {1, 1}).rate, "c2 cf");
    return o;
}

// 3. CF and AF strictly decrease on negative correlation.
Outcome negative_correlation_monotonicity()
{
    Outcome o;
    for (const double d : reference_distances) {
        const auto g = normalize(line_geometry(d));
        double pf = 0, ph = 0, pa = 0;
        double worst = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 101; ++i) {
            const double rho = grid(-1, 0, i, 101);
            const double f = cf_full(g, rho, {1, 1}).rate;
            const double h = cf_half(g, rho, reference_half).rate;
            const double a = af_rate(g, rho, 2, 2).rate;
            if (i > 0) {
                worst = std::min({worst, pf - f, ph - h, pa - a});
            }
            if (std::abs(rho) < 1 - correlation_epsilon) {
                dominance.add(ub_full(g, rho, {1, 1}).rate, f, "c3 cf_full");
                dominance.add(ub_half(g, rho, reference_half).rate, h, "c3 cf_half");
                dominance.add(ub_half(g, rho, {2, 0, 2, 0.5}).rate, a, "c3 af");
            }
            pf = f;
            ph = h;
            pa = a;
        }
        o.check(worst > 1e-12, "d=" + fmt(d) + " smallest step " + fmt(worst));
    }
    return o;
}

// 4. Turning point and level crossing of the CF rate at d = 0.4.
Outcome cf_landmarks()
{
    Outcome o;
    const auto g = normalize(line_geometry(0.4));
    const double h = 1e-5;
    auto slope = [&](double r) { return (cf_full(g, r + h, {1, 1}).rate - cf_full(g, r - h, {1, 1}).rate) / (2 * h); };
    const double s = rho_star(g);
    o.check(std::abs(s - 0.4) < 1e-12, "rho_star " + fmt(s));
    o.check(std::abs(slope(s)) <= 1e-3, "slope at rho_star " + fmt(slope(s)));
    o.check(slope(s - 1e-3) < 0 && slope(s + 1e-3) > 0, "no sign change");
    const double rp = rho_prime(g);
    const double gap = cf_full(g, rp, {1, 1}).rate - cf_full(g, 0, {1, 1}).rate;
    o.check(std::abs(gap) <= 1e-9, "level gap " + fmt(gap));
    for (double r : {s - h, s, s + h, rp, 0.0}) {
        dominance.add(ub_full(g, r, {1, 1}).rate, cf_full(g, r, {1, 1}).rate, "c4");
    }
    return o;
}

// 5. The independent-noise model reproduces CF and AF.
Outcome alternative_model()
{
    Outcome o;
    std::mt19937_64 rng(5005);
    double worst_cf = 0, worst_af = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto spec = hn::random_channel(rng, 1 - 1e-6);
        const auto g = normalize(spec);
        const FullDuplexPowers p{hn::random_positive(rng, 10), hn::random_positive(rng, 10)};
        const double p11 = hn::random_positive(rng, 10), p2 = hn::random_positive(rng, 10);
        const double cf = cf_full(g, spec.rho_z, p).rate;
        const double af = af_rate(g, spec.rho_z, p11, p2).rate;
        worst_cf = std::max(worst_cf, std::abs(cf - cf_full_equivalent(g, spec.rho_z, p).rate));
        worst_af = std::max(worst_af, std::abs(af - af_rate_alternative(spec, p11, p2).rate));
        dominance.add(ub_full(g, spec.rho_z, p).rate, cf, "c5 cf");
        dominance.add(ub_half(g, spec.rho_z, {p11, 0, p2, 0.5}).rate, af, "c5 af");
    }
    o.check(worst_cf <= 1e-10, "cf worst " + fmt(worst_cf));
    o.check(worst_af <= 1e-10, "af worst " + fmt(worst_af));
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("worst cf ") + fmt(worst_cf) + " af " + fmt(worst_af);
    return o;
}

// 6. Closed-form allocations against a 2e5-point grid.
Outcome allocation_oracle()
{
    Outcome o;
    std::mt19937_64 rng(6006);
    std::uniform_real_distribution<double> budget(0.1, 10.0);
    double worst_p1 = 0, worst_rate = 0, worst_curv = -std::numeric_limits<double>::infinity();
    std::string worst_p1_at;
    for (int k = 0; k < 1000; ++k) {
        const auto spec = hn::random_channel(rng, 0.999);
        const auto g = normalize(spec);
        const double rho = spec.rho_z;
        const double pt = 10.1 - budget(rng);

        for (int mode = 0; mode < 2; ++mode) {
            const double total = mode == 0 ? pt : 2 * pt;
            const auto alloc = mode == 0 ? cf_full_alloc(g, rho, pt) : af_alloc(g, rho, pt);
            std::function<double(double)> f = [&](double x) {
                return mode == 0 ? cf_full(g, rho, {x, pt - x}).rate : af_rate(g, rho, x, 2 * pt - x).rate;
            };
            const auto best = scalaropt::argmax_grid(f, scalaropt::Interval(0, total), 200000);
            const double rel = std::abs(alloc.p1_star - best.x) / alloc.p1_star;
            if (rel > worst_p1) {
                worst_p1 = rel;
                worst_p1_at = std::string(mode == 0 ? "cf" : "af") + " draw " + std::to_string(k) +
                              " P1*/T=" + fmt(alloc.p1_star / total);
            }
            worst_rate = std::max(worst_rate, std::abs(alloc.rate - best.value));
            const double h = 1e-3 * total;
            for (int i = 1; i < 1000; ++i) {
                worst_curv = std::max(worst_curv, f((i - 1) * h) - 2 * f(i * h) + f(std::min(total, (i + 1) * h)));
            }
            if (mode == 0) {
                dominance.add(ub_full(g, rho, {alloc.p1_star, alloc.p2_star}).rate, alloc.rate, "c6 cf");
            } else {
                dominance.add(ub_half(g, rho, {alloc.p1_star, 0, alloc.p2_star, 0.5}).rate, alloc.rate, "c6 af");
            }
        }
    }
    o.check(worst_p1 <= 1e-4, "P1 relative error " + fmt(worst_p1) + " at " + worst_p1_at);
    o.check(worst_rate <= 1e-8, "rate error " + fmt(worst_rate));
    o.check(worst_curv <= 1e-8, "second difference " + fmt(worst_curv));
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("worst P1 rel ") + fmt(worst_p1) + " rate " +
                fmt(worst_rate) + " curvature " + fmt(worst_curv);
    return o;
}

// 7. Spot values against brute-force long double oracles.
Outcome spot_values()
{
    Outcome o;
    const auto g4 = normalize(line_geometry(0.4));
    const auto g8 = normalize(line_geometry(0.8));
    const auto o4 = oracle::line(0.4L);
    const auto o8 = oracle::line(0.8L);
    auto near = [&](const char* name, double lib, oracle::real ref, double stated) {
        o.check(std::abs(lib - static_cast<double>(ref)) <= 1e-3,
                std::string(name) + " lib " + fmt(lib) + " oracle " + fmt(static_cast<double>(ref)));
        o.check(std::abs(lib - stated) <= 1e-3, std::string(name) + " vs stated " + fmt(stated));
    };

    const double cf = cf_full(g4, 0, {1, 1}).rate;
    near("cf_full", cf, oracle::cf_full(o4, 0, 1, 1), 0.9189);
    const auto df = df_full(g4, {1, 1});
    const auto [df_x, df_v] = oracle::df_full(o4, 1, 1);
    near("df_full", df.rate, df_v, 1.3122);
    near("df rho_x*", *df.rho_x_star, df_x, 0.4165);
    const double ub = ub_full(g4, 0, {1, 1}).rate;
    near("ub_full", ub, oracle::ub_full(o4, 0, 1, 1).second, 1.3438);
    const double af = af_rate(g8, 0, 2, 2).rate;
    near("af_rate", af, oracle::af(o8, 0, 2, 2), 0.6394);

    const auto cfa = cf_full_alloc(g4, 0, 2);
    const auto cf_grid =
        oracle::grid_max([&](oracle::real x) { return oracle::cf_full(o4, 0, x, 2 - x); }, 0, 2, 200001);
    near("cf_full_alloc P1", cfa.p1_star, cf_grid.first, 1.1501);
    const auto afa = af_alloc(g8, 0, 2);
    const auto af_grid = oracle::grid_max([&](oracle::real x) { return oracle::af(o8, 0, x, 4 - x); }, 0, 4, 200001);
    near("af_alloc P1", afa.p1_star, af_grid.first, 3.3965);

    dominance.add(ub, cf, "c7 cf");
    dominance.add(ub, df.rate, "c7 df");
    dominance.add(ub_half(g8, 0, {2, 0, 2, 0.5}).rate, af, "c7 af");
    dominance.add(ub_full(g4, 0, {cfa.p1_star, cfa.p2_star}).rate, cfa.rate, "c7 cf alloc");
    dominance.add(ub_half(g8, 0, {afa.p1_star, 0, afa.p2_star, 0.5}).rate, afa.rate, "c7 af alloc");
    return o;
}

// 8. Orderings visible in the rate-versus-correlation plots.
Outcome figure_orderings()
{
    Outcome o;
    hn::SweepConfig full;
    full.d = 0.4;
    for (const auto& r : hn::run_sweep(full).rows) {
        o.check(*r.df >= *r.cf, "full DF<CF at rho_z=" + fmt(r.rho_z));
        o.check(*r.df >= *r.direct, "full DF<direct at rho_z=" + fmt(r.rho_z));
        dominance.row(r, "c8 full");
    }
    hn::SweepConfig half;
    half.mode = Duplex::half;
    half.d = 0.8;
    for (const auto& r : hn::run_sweep(half).rows) {
        if (r.rho_z < 0) {
            o.check(*r.af >= *r.df, "half AF<DF at rho_z=" + fmt(r.rho_z));
        }
        dominance.row(r, "c8 half");
    }
    return o;
}

// 9. Nothing evaluated above exceeds its bound.
Outcome dominance_summary()
{
    Outcome o;
    o.check(dominance.samples > 0, "no samples");
    o.check(dominance.worst >= 0, "violated at " + dominance.where);
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(dominance.samples) + " pairs, worst slack " +
                fmt(dominance.worst);
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {1, "degraded channel: DF meets cut-set bound", 1, degraded_capacity},
        {2, "reversely degraded channel: direct meets cut-set bound", 1, reversely_degraded_capacity},
        {3, "CF and AF strictly decreasing on [-1, 0]", 5, negative_correlation_monotonicity},
        {4, "CF turning point and level crossing", 1, cf_landmarks},
        {5, "alternative model reproduces CF and AF", 5, alternative_model},
        {6, "closed-form allocations vs grid", 60, allocation_oracle},
        {7, "spot values vs brute-force oracle", 5, spot_values},
        {8, "rate orderings across sweeps", 5, figure_orderings},
        {9, "achievable rates below bound", 1, dominance_summary},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out = c.run();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.limit_s) {
            out.check(false, "took " + fmt(secs) + " s, limit " + fmt(c.limit_s) + " s");
        }
        std::printf("criterion %d: %s  %s (%.2f s)%s%s\n", c.id, out.pass ? "PASS" : "FAIL", c.name, secs,
                    out.detail.empty() ? "" : "  ", out.detail.c_str());
        failures += out.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
