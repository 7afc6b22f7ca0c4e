#pragma once

#include <relaynoise/allocator.hpp>
#include <relaynoise/cutset.hpp>
#include <relaynoise/harness/config.hpp>
#include <relaynoise/harness/parallel.hpp>
#include <relaynoise/scalaropt.hpp>
#include <relaynoise/strategies.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <initializer_list>
#include <fstream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace relaynoise::harness {

struct SweepRow {
    double rho_z = 0.0;
    std::optional<double> ub;
    std::optional<double> df;
    std::optional<double> cf;
    std::optional<double> af;
    std::optional<double> ub_af;
    std::optional<double> direct;
    std::optional<double> rho_x_star_ub;
    std::optional<double> rho_x_star_df;
    std::optional<double> alpha_star;
    std::optional<double> alpha_star_df;
    std::optional<double> alpha_star_cf;
    std::optional<double> p1_star;
    std::optional<double> p2_star;
};

struct SweepTable {
    bool has_af = false;
    bool has_alpha = false;
    bool has_alloc = false;
    std::vector<SweepRow> rows;

    std::vector<std::string> columns() const
    {
        std::vector<std::string> cols{"rho_z", "ub", "df", "cf"};
        if (has_af) {
            cols.insert(cols.end(), {"af", "ub_af"});
        }
        cols.insert(cols.end(), {"direct", "rho_x_star_ub", "rho_x_star_df"});
        if (has_alpha) {
            cols.insert(cols.end(), {"alpha_star", "alpha_star_df", "alpha_star_cf"});
        }
        if (has_alloc) {
            cols.insert(cols.end(), {"P1_star", "P2_star"});
        }
        return cols;
    }
};

/// A formula failed at one grid point.
class sweep_error : public std::runtime_error {
public:
    sweep_error(double rho_z, const std::string& what)
        : std::runtime_error("at rho_z=" + format_value(rho_z) + ": " + what), rho_z_(rho_z)
    {
    }

    double rho_z() const { return rho_z_; }

    static std::string format_value(double v)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v);
        return buf;
    }

private:
    double rho_z_;
};

/// Alpha search domain when optimize-alpha is on.
inline constexpr double alpha_margin = 1e-6;

/// Grid point i of n on [lo, hi]; both endpoints are hit exactly.
inline double grid_point(double lo, double hi, std::size_t i, std::size_t n)
{
    if (i == 0) {
        return lo;
    }
    if (i + 1 == n) {
        return hi;
    }
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

inline bool bound_defined(double rho_z)
{
    return std::abs(rho_z) < 1.0 - correlation_epsilon;
}

namespace detail {

template <class Rate>
scalaropt::Optimum best_alpha(Rate&& rate_at_alpha)
{
    return scalaropt::maximize_unimodal(rate_at_alpha, scalaropt::Interval(alpha_margin, 1.0 - alpha_margin));
}

inline SweepRow evaluate_full(const SweepConfig& cfg, const NormalizedGains& g, double rho_z)
{
    SweepRow row;
    row.rho_z = rho_z;
    FullDuplexPowers p = cfg.full;
    if (cfg.power_policy == PowerPolicy::optimal_cf) {
        const auto alloc = cf_full_alloc(g, rho_z, cfg.pt);
        p = {alloc.p1_star, alloc.p2_star};
        row.p1_star = alloc.p1_star;
        row.p2_star = alloc.p2_star;
    }
    if (bound_defined(rho_z)) {
        const auto ub = ub_full(g, rho_z, p);
        row.ub = ub.rate;
        row.rho_x_star_ub = ub.rho_x_star;
    }
    const auto df = df_full(g, p);
    row.df = df.rate;
    row.rho_x_star_df = df.rho_x_star;
    row.cf = cf_full(g, rho_z, p).rate;
    row.direct = direct_full(g, p.p1).rate;
    return row;
}

inline SweepRow evaluate_half(const SweepConfig& cfg, const NormalizedGains& g, double rho_z)
{
    SweepRow row;
    row.rho_z = rho_z;
    const HalfDuplexPowers& p = cfg.half;
    const bool bounded = bound_defined(rho_z);

    if (cfg.optimize_alpha) {
        auto with_alpha = [&](double a) {
            HalfDuplexPowers q = p;
            q.alpha = a;
            return q;
        };
        if (bounded) {
            const auto best = best_alpha([&](double a) { return ub_half(g, rho_z, with_alpha(a)).rate; });
            const auto ub = ub_half(g, rho_z, with_alpha(best.x));
            row.ub = ub.rate;
            row.rho_x_star_ub = ub.rho_x_star;
            row.alpha_star = best.x;
        }
        const auto best_df = best_alpha([&](double a) { return df_half(g, with_alpha(a)).rate; });
        const auto df = df_half(g, with_alpha(best_df.x));
        row.df = df.rate;
        row.rho_x_star_df = df.rho_x_star;
        row.alpha_star_df = best_df.x;
        const auto best_cf = best_alpha([&](double a) { return cf_half(g, rho_z, with_alpha(a)).rate; });
        row.cf = best_cf.value;
        row.alpha_star_cf = best_cf.x;
    } else {
        if (bounded) {
            const auto ub = ub_half(g, rho_z, p);
            row.ub = ub.rate;
            row.rho_x_star_ub = ub.rho_x_star;
        }
        const auto df = df_half(g, p);
        row.df = df.rate;
        row.rho_x_star_df = df.rho_x_star;
        row.cf = cf_half(g, rho_z, p).rate;
    }
    row.direct = direct_half(g, p).rate;

    double af_p1 = cfg.af_p1_1;
    double af_p2 = cfg.af_p2;
    if (cfg.power_policy == PowerPolicy::optimal_af) {
        const auto alloc = af_alloc(g, rho_z, cfg.pt);
        af_p1 = alloc.p1_star;
        af_p2 = alloc.p2_star;
        row.p1_star = af_p1;
        row.p2_star = af_p2;
    }
    row.af = af_rate(g, rho_z, af_p1, af_p2).rate;
    if (bounded) {
        row.ub_af = ub_half(g, rho_z, HalfDuplexPowers{af_p1, 0.0, af_p2, 0.5}).rate;
    }
    return row;
}

} // namespace detail

/// Evaluates one grid point. Formula errors are rethrown as sweep_error
/// carrying the offending rho_z.
inline SweepRow evaluate_point(const SweepConfig& cfg, double rho_z)
{
    try {
        ChannelSpec spec = cfg.base_channel();
        spec.rho_z = rho_z;
        const NormalizedGains g = normalize(spec);
        return cfg.mode == Duplex::full ? detail::evaluate_full(cfg, g, rho_z) : detail::evaluate_half(cfg, g, rho_z);
    } catch (const relaynoise::domain_error& e) {
        throw sweep_error(rho_z, e.what());
    }
}

inline SweepTable run_sweep(const SweepConfig& cfg)
{
    cfg.validate();
    SweepTable table;
    table.has_af = cfg.mode == Duplex::half;
    table.has_alpha = cfg.optimize_alpha;
    table.has_alloc = cfg.power_policy != PowerPolicy::fixed;
    table.rows.resize(cfg.rho_z_points);
    parallel_for(cfg.rho_z_points, cfg.threads, [&](std::size_t i) {
        table.rows[i] = evaluate_point(cfg, grid_point(cfg.rho_z_min, cfg.rho_z_max, i, cfg.rho_z_points));
    });
    return table;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string format_cell(const std::optional<double>& v)
{
    return v ? sweep_error::format_value(*v) : std::string();
}

inline std::vector<std::optional<double>> row_cells(const SweepTable& t, const SweepRow& r)
{
    std::vector<std::optional<double>> cells;
    auto put = [&](std::initializer_list<std::optional<double>> vs) {
        for (const auto& v : vs) {
            cells.push_back(v);
        }
    };
    put({r.rho_z, r.ub, r.df, r.cf});
    if (t.has_af) {
        put({r.af, r.ub_af});
    }
    put({r.direct, r.rho_x_star_ub, r.rho_x_star_df});
    if (t.has_alpha) {
        put({r.alpha_star, r.alpha_star_df, r.alpha_star_cf});
    }
    if (t.has_alloc) {
        put({r.p1_star, r.p2_star});
    }
    return cells;
}

inline void write_header(const SweepTable& t, std::ostream& os)
{
    const auto cols = t.columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        os << (i ? "," : "") << cols[i];
    }
    os << '\n';
}

inline void write_row(const SweepTable& t, const SweepRow& r, std::ostream& os)
{
    const auto cells = row_cells(t, r);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        os << (i ? "," : "") << format_cell(cells[i]);
    }
    os << '\n';
}

inline void write_csv(const SweepTable& t, std::ostream& os)
{
    write_header(t, os);
    for (const auto& r : t.rows) {
        write_row(t, r, os);
    }
}

inline void write_csv(const SweepTable& t, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
    }
    write_csv(t, out);
    out.flush();
    if (!out) {
        throw std::runtime_error("write to '" + path.string() + "' failed");
    }
}

} // namespace relaynoise::harness
