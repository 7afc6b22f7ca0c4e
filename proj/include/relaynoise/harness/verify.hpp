#pragma once

#include <relaynoise/allocator.hpp>
#include <relaynoise/altmodel.hpp>
#include <relaynoise/analysis.hpp>
#include <relaynoise/cutset.hpp>
#include <relaynoise/harness/parallel.hpp>
#include <relaynoise/harness/random_channel.hpp>
#include <relaynoise/harness/sweep.hpp>
#include <relaynoise/scalaropt.hpp>
#include <relaynoise/strategies.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relaynoise::harness {

struct VerifyOptions {
    std::uint64_t seed = 0x5eed2011ULL;
    std::size_t draws = 1000;           // random channels per property
    std::size_t capacity_channels = 100;
    std::size_t grid_points = 200001;   // allocation oracle resolution
    unsigned threads = 0;
};

/// One checked property. worst_slack >= 0 means it held at every sample;
/// the detail names the sample where the slack was smallest.
struct PropertyResult {
    std::string suite;
    std::string property;
    bool passed = true;
    double worst_slack = std::numeric_limits<double>::infinity();
    std::size_t samples = 0;
    std::string detail;
};

struct VerifyReport {
    std::vector<PropertyResult> properties;

    std::size_t passed() const
    {
        return static_cast<std::size_t>(
            std::count_if(properties.begin(), properties.end(), [](const auto& p) { return p.passed; }));
    }
    std::size_t failed() const { return properties.size() - passed(); }
    bool ok() const { return failed() == 0; }
};

class unknown_suite_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& verify_suite_names()
{
    static const std::vector<std::string> names{"dominance",         "monotonicity", "capacity-cases",
                                                "alt-equivalence",   "allocation-oracle", "appendix-a"};
    return names;
}

namespace detail {

inline std::string fmt(double v)
{
    return sweep_error::format_value(v);
}

inline std::string describe(const NormalizedGains& g, double rho_z)
{
    return "g21=" + fmt(g.g21) + " g32=" + fmt(g.g32) + " g31=" + fmt(g.g31) + " rho_z=" + fmt(rho_z);
}

class Property {
public:
    Property(std::string suite, std::string name) { result_ = {std::move(suite), std::move(name)}; }

    /// Records one sample; `where` is only invoked when it becomes the worst.
    template <class Where>
    void add(double slack, Where&& where)
    {
        ++result_.samples;
        if (std::isnan(slack)) {
            slack = -std::numeric_limits<double>::infinity();
        }
        if (result_.samples == 1 || slack < result_.worst_slack) {
            result_.worst_slack = slack;
            result_.detail = where();
        }
    }

    void add(double slack) { add(slack, [] { return std::string(); }); }

    PropertyResult finish()
    {
        result_.passed = result_.samples > 0 && result_.worst_slack >= 0.0;
        if (result_.samples == 0) {
            result_.detail = "no samples";
        }
        return result_;
    }

private:
    PropertyResult result_;
};

inline constexpr double dominance_slack = 1e-9;
inline const std::vector<double> reference_distances{0.2, 0.4, 0.6, 0.8};

inline HalfDuplexPowers random_half_powers(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> alpha(0.05, 0.95);
    HalfDuplexPowers p;
    p.p1_1 = random_positive(rng, 10.0);
    p.p1_2 = random_positive(rng, 10.0);
    p.p2 = random_positive(rng, 10.0);
    p.alpha = alpha(rng);
    return p;
}

inline FullDuplexPowers random_full_powers(std::mt19937_64& rng)
{
    const double p1 = random_positive(rng, 10.0);
    return {p1, random_positive(rng, 10.0)};
}

// ---------------------------------------------------------------------------

inline void suite_dominance(const VerifyOptions& opt, std::vector<PropertyResult>& out)
{
    const std::string s = "dominance";
    Property full_df(s, "ub_full>=df_full"), full_cf(s, "ub_full>=cf_full"), full_direct(s, "ub_full>=direct_full");
    Property half_df(s, "ub_half>=df_half"), half_cf(s, "ub_half>=cf_half"), half_direct(s, "ub_half>=direct_half");
    Property af(s, "ub_half>=af_rate");
    Property rows(s, "sweep rows below bound");

    std::mt19937_64 rng(opt.seed);
    for (std::size_t i = 0; i < opt.draws; ++i) {
        const ChannelSpec spec = random_channel(rng, 1.0 - 1e-6);
        const NormalizedGains g = normalize(spec);
        const double rho = spec.rho_z;
        const FullDuplexPowers pf = random_full_powers(rng);
        const HalfDuplexPowers ph = random_half_powers(rng);
        auto where = [&] { return describe(g, rho); };

        const double ubf = ub_full(g, rho, pf).rate + dominance_slack;
        full_df.add(ubf - df_full(g, pf).rate, where);
        full_cf.add(ubf - cf_full(g, rho, pf).rate, where);
        full_direct.add(ubf - direct_full(g, pf.p1).rate, where);

        const double ubh = ub_half(g, rho, ph).rate + dominance_slack;
        half_df.add(ubh - df_half(g, ph).rate, where);
        half_cf.add(ubh - cf_half(g, rho, ph).rate, where);
        half_direct.add(ubh - direct_half(g, ph).rate, where);

        const HalfDuplexPowers pa{ph.p1_1, 0.0, ph.p2, 0.5};
        af.add(ub_half(g, rho, pa).rate + dominance_slack - af_rate(g, rho, pa.p1_1, pa.p2).rate, where);
    }

    for (const Duplex mode : {Duplex::full, Duplex::half}) {
        for (const double d : reference_distances) {
            SweepConfig cfg;
            cfg.mode = mode;
            cfg.d = d;
            cfg.threads = opt.threads;
            for (const auto& r : run_sweep(cfg).rows) {
                if (!r.ub) {
                    continue;
                }
                auto where = [&] {
                    return std::string(to_string(mode)) + " d=" + fmt(d) + " rho_z=" + fmt(r.rho_z);
                };
                const double bound = *r.ub + dominance_slack;
                rows.add(std::min({bound - *r.df, bound - *r.cf, bound - *r.direct}), where);
                if (r.af && r.ub_af) {
                    rows.add(*r.ub_af + dominance_slack - *r.af, where);
                }
            }
        }
    }

    for (auto* p : {&full_df, &full_cf, &full_direct, &half_df, &half_cf, &half_direct, &af, &rows}) {
        out.push_back(p->finish());
    }
}

// ---------------------------------------------------------------------------

inline void suite_monotonicity(const VerifyOptions& opt, std::vector<PropertyResult>& out)
{
    const std::string s = "monotonicity";
    Property cf_f(s, "cf_full decreasing on [-1;0]"), cf_h(s, "cf_half decreasing on [-1;0]"),
        af(s, "af_rate decreasing on [-1;0]");
    Property relay_cf_f(s, "cf_full nondecreasing in P2"), relay_cf_h(s, "cf_half nondecreasing in P2"),
        relay_af(s, "af_rate nondecreasing in P2");

    constexpr std::size_t n = 101;
    constexpr double strict = 1e-12;
    for (const double d : reference_distances) {
        const NormalizedGains g = normalize(line_geometry(d));
        double prev_f = 0.0, prev_h = 0.0, prev_a = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double rho = grid_point(-1.0, 0.0, i, n);
            const double f = cf_full(g, rho, {1.0, 1.0}).rate;
            const double h = cf_half(g, rho, HalfDuplexPowers{1.0, 1.0, 2.0, 0.5}).rate;
            const double a = af_rate(g, rho, 2.0, 2.0).rate;
            if (i > 0) {
                auto where = [&] { return "d=" + fmt(d) + " rho_z=" + fmt(rho); };
                cf_f.add(prev_f - f - strict, where);
                cf_h.add(prev_h - h - strict, where);
                af.add(prev_a - a - strict, where);
            }
            prev_f = f;
            prev_h = h;
            prev_a = a;
        }
    }

    // Relay power: rate never decreases in P2, on a 41-point grid.
    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<std::pair<NormalizedGains, double>> cases;
    for (const double d : reference_distances) {
        const NormalizedGains g = normalize(line_geometry(d));
        for (std::size_t k = 0; k < 41; ++k) {
            cases.emplace_back(g, grid_point(-1.0, 1.0, k, 41));
        }
    }
    for (std::size_t i = 0; i < opt.draws / 10; ++i) {
        const ChannelSpec spec = random_channel(rng, 1.0);
        cases.emplace_back(normalize(spec), spec.rho_z);
    }
    for (const auto& [g, rho] : cases) {
        auto where = [&, &g = g, &rho = rho] { return describe(g, rho); };
        const double p1 = 1.0;
        relay_cf_f.add(
            -relay_uses_full_budget_check([&](double p2) { return cf_full(g, rho, {p1, p2}).rate; }, 10.0).worst_drop,
            where);
        relay_cf_h.add(-relay_uses_full_budget_check(
                            [&](double p2) { return cf_half(g, rho, HalfDuplexPowers{p1, p1, p2, 0.5}).rate; }, 10.0)
                            .worst_drop,
                        where);
        relay_af.add(
            -relay_uses_full_budget_check([&](double p2) { return af_rate(g, rho, 2.0, p2).rate; }, 10.0).worst_drop,
            where);
    }

    for (auto* p : {&cf_f, &cf_h, &af, &relay_cf_f, &relay_cf_h, &relay_af}) {
        out.push_back(p->finish());
    }
}

// ---------------------------------------------------------------------------

inline void suite_capacity_cases(const VerifyOptions& opt, std::vector<PropertyResult>& out)
{
    const std::string s = "capacity-cases";
    constexpr double tol = 1e-8;
    Property deg_full(s, "degraded: df_full=ub_full"), deg_half(s, "degraded: df_half=ub_half");
    Property rev_full(s, "reversely degraded: direct_full=ub_full"),
        rev_half(s, "reversely degraded: direct_half=ub_half");
    Property classes(s, "classify at witness");

    std::mt19937_64 rng(opt.seed + 1);
    for (std::size_t i = 0; i < opt.capacity_channels; ++i) {
        NormalizedGains g = normalize(random_channel(rng, 0.0));
        if (g.g21 == g.g31) {
            continue;
        }
        const FullDuplexPowers pf = random_full_powers(rng);
        const HalfDuplexPowers ph = random_half_powers(rng);

        NormalizedGains deg = g;
        if (deg.g21 < deg.g31) {
            std::swap(deg.g21, deg.g31);
        }
        const double w = std::sqrt(deg.g31 / deg.g21);
        auto where_deg = [&] { return describe(deg, w); };
        deg_full.add(tol - std::abs(df_full(deg, pf).rate - ub_full(deg, w, pf).rate), where_deg);
        deg_half.add(tol - std::abs(df_half(deg, ph).rate - ub_half(deg, w, ph).rate), where_deg);
        classes.add(classify(deg, w).kind == ChannelKind::degraded ? 0.0 : -1.0, where_deg);

        NormalizedGains rev{deg.g31, deg.g32, deg.g21};
        const double v = std::sqrt(rev.g21 / rev.g31);
        auto where_rev = [&] { return describe(rev, v); };
        rev_full.add(tol - std::abs(direct_full(rev, pf.p1).rate - ub_full(rev, v, pf).rate), where_rev);
        rev_half.add(tol - std::abs(direct_half(rev, ph).rate - ub_half(rev, v, ph).rate), where_rev);
        classes.add(classify(rev, v).kind == ChannelKind::reversely_degraded ? 0.0 : -1.0, where_rev);
    }

    for (auto* p : {&deg_full, &deg_half, &rev_full, &rev_half, &classes}) {
        out.push_back(p->finish());
    }
}

// ---------------------------------------------------------------------------

inline void suite_alt_equivalence(const VerifyOptions& opt, std::vector<PropertyResult>& out)
{
    const std::string s = "alt-equivalence";
    constexpr double tol = 1e-10;
    Property cf_f(s, "cf_full=cf_full_equivalent"), cf_h(s, "cf_half=cf_half_equivalent"),
        af(s, "af_rate=af_rate_alternative"), gain(s, "alt gain=gamma21_prime");

    std::mt19937_64 rng(opt.seed + 2);
    for (std::size_t i = 0; i < opt.draws; ++i) {
        const ChannelSpec spec = random_channel(rng, 1.0 - 1e-6);
        const NormalizedGains g = normalize(spec);
        const double rho = spec.rho_z;
        const FullDuplexPowers pf = random_full_powers(rng);
        const HalfDuplexPowers ph = random_half_powers(rng);
        auto where = [&] { return describe(g, rho); };

        cf_f.add(tol - std::abs(cf_full(g, rho, pf).rate - cf_full_equivalent(g, rho, pf).rate), where);
        cf_h.add(tol - std::abs(cf_half(g, rho, ph).rate - cf_half_equivalent(g, rho, ph).rate), where);
        af.add(tol - std::abs(af_rate(g, rho, ph.p1_1, ph.p2).rate - af_rate_alternative(spec, ph.p1_1, ph.p2).rate),
               where);
        const double gp = gamma21_prime(g, rho);
        gain.add(tol * std::max(1.0, gp) - std::abs(normalize(to_alt(spec)).g21 - gp), where);
    }

    for (auto* p : {&cf_f, &cf_h, &af, &gain}) {
        out.push_back(p->finish());
    }
}

// ---------------------------------------------------------------------------

struct AllocationCheck {
    double p1_slack;
    double rate_slack;
    double concavity_slack;
};

/// Compares a closed-form split against a grid argmax of rate(x) on [0, total].
template <class Rate>
AllocationCheck check_allocation(const AllocationResult& closed, Rate&& rate, double total, std::size_t points)
{
    constexpr double p1_rel_tol = 1e-4;
    constexpr double rate_tol = 1e-8;
    constexpr double concavity_tol = 1e-8;

    const auto grid = scalaropt::argmax_grid(rate, scalaropt::Interval(0.0, total), points);
    AllocationCheck c{};
    c.p1_slack = p1_rel_tol - std::abs(closed.p1_star - grid.x) / closed.p1_star;
    c.rate_slack = rate_tol - std::abs(closed.rate - grid.value);

    const std::size_t steps = 1000;
    const double h = total / static_cast<double>(steps);
    double worst = -std::numeric_limits<double>::infinity();
    double left = rate(0.0);
    double mid = rate(h);
    for (std::size_t k = 2; k <= steps; ++k) {
        const double right = rate(k == steps ? total : h * static_cast<double>(k));
        worst = std::max(worst, left - 2.0 * mid + right);
        left = mid;
        mid = right;
    }
    c.concavity_slack = concavity_tol - worst;
    return c;
}

inline void suite_allocation_oracle(const VerifyOptions& opt, std::vector<PropertyResult>& out)
{
    const std::string s = "allocation-oracle";
    Property cf_p1(s, "cf_full_alloc P1 vs grid"), cf_rate(s, "cf_full_alloc rate vs grid"),
        cf_concave(s, "cf_full rate concave in P1");
    Property af_p1(s, "af_alloc P1 vs grid"), af_rate_p(s, "af_alloc rate vs grid"),
        af_concave(s, "af_rate concave in P1");

    struct Draw {
        NormalizedGains g;
        double rho;
        double pt;
    };
    std::mt19937_64 rng(opt.seed + 3);
    std::uniform_real_distribution<double> budget(0.1, 10.0);
    std::vector<Draw> draws;
    for (std::size_t i = 0; i < opt.draws; ++i) {
        const ChannelSpec spec = random_channel(rng, 0.999);
        draws.push_back({normalize(spec), spec.rho_z, 10.0 - budget(rng) + 0.1});
    }

    std::vector<std::pair<AllocationCheck, AllocationCheck>> checks(draws.size());
    parallel_for(draws.size(), opt.threads, [&](std::size_t i) {
        const auto& [g, rho, pt] = draws[i];
        checks[i].first = check_allocation(
            cf_full_alloc(g, rho, pt), [&](double x) { return cf_full(g, rho, {x, pt - x}).rate; }, pt,
            opt.grid_points);
        checks[i].second = check_allocation(
            af_alloc(g, rho, pt), [&](double x) { return af_rate(g, rho, x, 2.0 * pt - x).rate; }, 2.0 * pt,
            opt.grid_points);
    });

    for (std::size_t i = 0; i < draws.size(); ++i) {
        auto where = [&] { return describe(draws[i].g, draws[i].rho) + " Pt=" + fmt(draws[i].pt); };
        cf_p1.add(checks[i].first.p1_slack, where);
        cf_rate.add(checks[i].first.rate_slack, where);
        cf_concave.add(checks[i].first.concavity_slack, where);
        af_p1.add(checks[i].second.p1_slack, where);
        af_rate_p.add(checks[i].second.rate_slack, where);
        af_concave.add(checks[i].second.concavity_slack, where);
    }

    for (auto* p : {&cf_p1, &cf_rate, &cf_concave, &af_p1, &af_rate_p, &af_concave}) {
        out.push_back(p->finish());
    }
}

// ---------------------------------------------------------------------------

inline double central_difference(const NormalizedGains& g, double rho, FullDuplexPowers p, double h)
{
    return (cf_full(g, rho + h, p).rate - cf_full(g, rho - h, p).rate) / (2.0 * h);
}

inline void suite_landmarks(const VerifyOptions& opt, std::vector<PropertyResult>& out)
{
    const std::string s = "appendix-a";
    Property flip(s, "cf_full slope changes sign at rho_star"), level(s, "cf_full(rho_prime)=cf_full(0)"),
        minimum(s, "cf_full minimal at rho_star");

    constexpr double h = 1e-5;
    constexpr double offset = 1e-3;
    std::vector<std::pair<NormalizedGains, FullDuplexPowers>> cases;
    for (const double d : reference_distances) {
        cases.emplace_back(normalize(line_geometry(d)), FullDuplexPowers{1.0, 1.0});
    }
    std::mt19937_64 rng(opt.seed + 4);
    for (std::size_t i = 0; i < opt.capacity_channels; ++i) {
        const NormalizedGains g = normalize(random_channel(rng, 0.0));
        cases.emplace_back(g, random_full_powers(rng));
    }

    for (const auto& [g, p] : cases) {
        const double rs = rho_star(g);
        const double rp = rho_prime(g);
        auto where = [&, &g = g] { return describe(g, rs) + " rho_prime=" + fmt(rp); };
        if (rs + offset + h < 1.0 && rs - offset - h > 0.0) {
            const double left = central_difference(g, rs - offset, p, h);
            const double right = central_difference(g, rs + offset, p, h);
            flip.add(std::min(-left, right), where);
        }
        level.add(1e-9 - std::abs(cf_full(g, rp, p).rate - cf_full(g, 0.0, p).rate), where);
        const double at_star = cf_full(g, rs, p).rate;
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < 201; ++k) {
            const double rho = grid_point(-1.0, 1.0, k, 201);
            worst = std::min(worst, cf_full(g, rho, p).rate - at_star + 1e-12);
        }
        minimum.add(worst, where);
    }

    for (auto* p : {&flip, &level, &minimum}) {
        out.push_back(p->finish());
    }
}

} // namespace detail

/// Runs one named suite, or every suite for "all".
inline VerifyReport run_verify(std::string_view suite, const VerifyOptions& opt = {})
{
    using Runner = void (*)(const VerifyOptions&, std::vector<PropertyResult>&);
    const std::vector<std::pair<std::string_view, Runner>> runners{
        {"dominance", detail::suite_dominance},
        {"monotonicity", detail::suite_monotonicity},
        {"capacity-cases", detail::suite_capacity_cases},
        {"alt-equivalence", detail::suite_alt_equivalence},
        {"allocation-oracle", detail::suite_allocation_oracle},
        {"appendix-a", detail::suite_landmarks},
    };
    VerifyReport report;
    bool matched = false;
    for (const auto& [name, run] : runners) {
        if (suite == "all" || suite == name) {
            run(opt, report.properties);
            matched = true;
        }
    }
    if (!matched) {
        std::string known = "all";
        for (const auto& n : verify_suite_names()) {
            known += ", " + n;
        }
        throw unknown_suite_error("unknown suite '" + std::string(suite) + "' (expected one of: " + known + ")");
    }
    return report;
}

/// CSV: suite,property,status,worst_slack,samples,detail.
inline void write_report(const VerifyReport& report, std::ostream& os)
{
    os << "suite,property,status,worst_slack,samples,detail\n";
    for (const auto& p : report.properties) {
        std::string detail = p.detail;
        std::replace(detail.begin(), detail.end(), ',', ';');
        os << p.suite << ',' << p.property << ',' << (p.passed ? "pass" : "fail") << ','
           << detail::fmt(p.worst_slack) << ',' << p.samples << ',' << detail << '\n';
    }
}

} // namespace relaynoise::harness
