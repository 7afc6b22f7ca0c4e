#include <relaynoise/relaynoise.hpp>
#include <relaynoise/harness/config.hpp>
#include <relaynoise/harness/numeric_alloc.hpp>
#include <relaynoise/harness/sweep.hpp>
#include <relaynoise/harness/verify.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace rn = relaynoise;
namespace hn = relaynoise::harness;

namespace {

// Flags that map one-to-one onto SweepConfig keys.
const char* const setting_keys[] = {"mode", "d",     "h21",  "h32",     "h31",   "n1",      "n",
                                    "rho-z-points",  "rho-z-min",       "rho-z-max",     "alpha",
                                    "p1",   "p2",    "p1-1", "p1-2",    "af-p1-1",       "af-p2",
                                    "power-policy",  "pt",   "out",     "threads"};

struct SettingFlags {
    std::string config_file;
    bool optimize_alpha = false;
    std::map<std::string, std::string> values;

    void attach(CLI::App& app)
    {
        app.add_option("--config", config_file, "key=value file applied before the flags");
        app.add_flag("--optimize-alpha", optimize_alpha, "maximize each half-duplex rate over alpha");
        for (const char* key : setting_keys) {
            app.add_option_function<std::string>(
                std::string("--") + key, [this, key](const std::string& v) { values[key] = v; });
        }
    }

    hn::SweepConfig build() const
    {
        hn::SweepConfig cfg;
        if (!config_file.empty()) {
            hn::load_config_file(cfg, config_file);
        }
        for (const auto& [k, v] : values) {
            if (k == "d") {
                hn::apply_setting(cfg, k, v);
            }
        }
        for (const auto& [k, v] : values) {
            if (k != "d") {
                hn::apply_setting(cfg, k, v);
            }
        }
        if (optimize_alpha) {
            cfg.optimize_alpha = true;
        }
        cfg.validate();
        return cfg;
    }
};

int run_sweep_cmd(const SettingFlags& flags)
{
    const auto cfg = flags.build();
    const auto table = hn::run_sweep(cfg);
    if (cfg.out.empty()) {
        hn::write_csv(table, std::cout);
    } else {
        hn::write_csv(table, std::filesystem::path(cfg.out));
    }
    return 0;
}

int run_rate_cmd(const SettingFlags& flags, double rho_z)
{
    auto cfg = flags.build();
    hn::SweepTable table;
    table.has_af = cfg.mode == rn::Duplex::half;
    table.has_alpha = cfg.optimize_alpha;
    table.has_alloc = cfg.power_policy != hn::PowerPolicy::fixed;
    table.rows.push_back(hn::evaluate_point(cfg, rho_z));
    hn::write_csv(table, std::cout);
    return 0;
}

int run_alloc_cmd(const SettingFlags& flags, const std::string& strategy, double rho_z)
{
    const auto cfg = flags.build();
    rn::ChannelSpec spec = cfg.base_channel();
    spec.rho_z = rho_z;
    const auto g = rn::normalize(spec);
    auto fmt = hn::sweep_error::format_value;

    if (strategy == "cf-half" || strategy == "df-full") {
        const auto r = strategy == "df-full" ? hn::df_full_alloc_numeric(g, cfg.pt)
                                             : hn::cf_half_alloc_numeric(g, rho_z, cfg.pt);
        std::cout << "strategy=" << strategy << "\np1_star=" << fmt(r.p1_star) << "\np2_star=" << fmt(r.p2_star)
                  << "\nrate=" << fmt(r.rate) << "\nbranch=" << r.label << "\ngrid_points=" << r.grid_points << '\n';
        return 0;
    }

    rn::AllocationResult r;
    if (strategy == "cf") {
        r = rn::cf_full_alloc(g, rho_z, cfg.pt);
    } else if (strategy == "af") {
        r = rn::af_alloc(g, rho_z, cfg.pt);
    } else if (strategy == "af-substituted") {
        r = rn::af_alloc_substituted(g, rho_z, cfg.pt);
    } else {
        throw CLI::ValidationError("--strategy", "expected cf, af, af-substituted, cf-half or df-full");
    }
    std::cout << "strategy=" << strategy << "\np1_star=" << fmt(r.p1_star) << "\np2_star=" << fmt(r.p2_star)
              << "\nrate=" << fmt(r.rate) << "\nbranch=" << rn::to_string(r.branch)
              << "\ncondition_value=" << fmt(r.condition_value) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Rates, bounds and power allocation for the Gaussian relay channel with correlated noises"};
    app.require_subcommand(1);

    SettingFlags sweep_flags, rate_flags, alloc_flags;
    auto* sweep = app.add_subcommand("sweep", "rate-versus-rho_z sweep written as CSV");
    sweep_flags.attach(*sweep);

    double rate_rho = 0.0;
    auto* rate = app.add_subcommand("rate", "evaluate one rho_z and print one CSV row");
    rate_flags.attach(*rate);
    rate->add_option("--rho-z", rate_rho, "noise correlation")->required();

    double alloc_rho = 0.0;
    std::string strategy = "cf";
    auto* alloc = app.add_subcommand("alloc", "total-power allocation");
    alloc_flags.attach(*alloc);
    alloc->add_option("--rho-z", alloc_rho, "noise correlation")->required();
    alloc->add_option("--strategy", strategy, "cf | af | af-substituted | cf-half | df-full")->capture_default_str();

    std::string suite = "all";
    hn::VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify", "run property suites and print a CSV report");
    verify->add_option("--suite", suite, "dominance | monotonicity | capacity-cases | alt-equivalence | "
                                         "allocation-oracle | appendix-a | all")
        ->capture_default_str();
    verify->add_option("--seed", vopt.seed)->capture_default_str();
    verify->add_option("--draws", vopt.draws)->capture_default_str();
    verify->add_option("--threads", vopt.threads)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sweep) {
            return run_sweep_cmd(sweep_flags);
        }
        if (*rate) {
            return run_rate_cmd(rate_flags, rate_rho);
        }
        if (*alloc) {
            return run_alloc_cmd(alloc_flags, strategy, alloc_rho);
        }
        const auto report = hn::run_verify(suite, vopt);
        hn::write_report(report, std::cout);
        std::cerr << report.passed() << " passed, " << report.failed() << " failed\n";
        return report.ok() ? 0 : 1;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
