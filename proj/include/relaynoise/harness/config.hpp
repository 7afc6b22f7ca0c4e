#pragma once

#include <relaynoise/channel.hpp>

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relaynoise::harness {

enum class PowerPolicy { fixed, optimal_cf, optimal_af };

inline const char* to_string(PowerPolicy p)
{
    switch (p) {
    case PowerPolicy::fixed:
        return "fixed";
    case PowerPolicy::optimal_cf:
        return "optimal-cf";
    case PowerPolicy::optimal_af:
        return "optimal-af";
    }
    return "?";
}

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One rate-versus-rho_z experiment.
struct SweepConfig {
    Duplex mode = Duplex::full;
    std::optional<double> d = 0.4; // line geometry; unset means use `channel`
    ChannelSpec channel;           // amplitudes and noises when d is unset

    std::size_t rho_z_points = 201;
    double rho_z_min = -1.0;
    double rho_z_max = 1.0;

    FullDuplexPowers full{1.0, 1.0};
    HalfDuplexPowers half{1.0, 1.0, 2.0, 0.5};
    double af_p1_1 = 2.0;
    double af_p2 = 2.0;

    bool optimize_alpha = false;
    PowerPolicy power_policy = PowerPolicy::fixed;
    double pt = 2.0;

    std::string out; // empty: stdout
    unsigned threads = 0;

    /// Channel with rho_z = 0; sweeps overwrite rho_z per grid point.
    ChannelSpec base_channel() const
    {
        ChannelSpec spec = d ? line_geometry(*d) : channel;
        spec.rho_z = 0.0;
        return spec;
    }

    void validate() const
    {
        auto fail = [](const std::string& msg) { throw config_error(msg); };
        if (rho_z_points < 2) {
            fail("rho-z-points must be at least 2");
        }
        if (!(rho_z_min >= -1.0 && rho_z_max <= 1.0 && rho_z_min < rho_z_max)) {
            fail("rho_z grid bounds must satisfy -1 <= min < max <= 1");
        }
        if (power_policy == PowerPolicy::optimal_af && mode != Duplex::half) {
            fail("power-policy=optimal-af requires mode=half");
        }
        if (power_policy == PowerPolicy::optimal_cf && mode != Duplex::full) {
            fail("power-policy=optimal-cf requires mode=full");
        }
        if (optimize_alpha && mode != Duplex::half) {
            fail("optimize-alpha requires mode=half");
        }
        if (power_policy != PowerPolicy::fixed && !(pt > 0.0)) {
            fail("pt must be positive");
        }
        try {
            relaynoise::validate(base_channel());
            relaynoise::validate(full);
            relaynoise::validate(half);
        } catch (const relaynoise::domain_error& e) {
            fail(e.what());
        }
        if (!(af_p1_1 >= 0.0 && af_p2 >= 0.0)) {
            fail("AF powers must be nonnegative");
        }
    }
};

namespace detail {

inline double parse_double(std::string_view key, std::string_view text)
{
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw config_error("invalid number for '" + std::string(key) + "': '" + std::string(text) + "'");
    }
    return v;
}

inline bool parse_bool(std::string_view key, std::string_view text)
{
    if (text == "1" || text == "true" || text == "yes" || text == "on") {
        return true;
    }
    if (text == "0" || text == "false" || text == "no" || text == "off") {
        return false;
    }
    throw config_error("invalid boolean for '" + std::string(key) + "': '" + std::string(text) + "'");
}

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace detail

/// Applies one key=value setting. Keys are the long CLI flag names without
/// the leading dashes; setting any of h21/h32/h31/n1/n switches the sweep
/// from line geometry to the explicit channel.
inline void apply_setting(SweepConfig& cfg, std::string_view key, std::string_view value)
{
    using detail::parse_bool;
    using detail::parse_double;

    auto explicit_channel = [&](double ChannelSpec::*field) {
        if (cfg.d) {
            cfg.channel = line_geometry(*cfg.d);
            cfg.d.reset();
        }
        cfg.channel.*field = parse_double(key, value);
    };

    if (key == "mode") {
        if (value == "full") {
            cfg.mode = Duplex::full;
        } else if (value == "half") {
            cfg.mode = Duplex::half;
        } else {
            throw config_error("mode must be 'full' or 'half'");
        }
    } else if (key == "d") {
        cfg.d = parse_double(key, value);
        if (!(*cfg.d > 0.0 && *cfg.d < 1.0)) {
            throw config_error("d must lie in (0, 1)");
        }
    } else if (key == "h21") {
        explicit_channel(&ChannelSpec::h21);
    } else if (key == "h32") {
        explicit_channel(&ChannelSpec::h32);
    } else if (key == "h31") {
        explicit_channel(&ChannelSpec::h31);
    } else if (key == "n1") {
        explicit_channel(&ChannelSpec::n1);
    } else if (key == "n") {
        explicit_channel(&ChannelSpec::n);
    } else if (key == "rho-z-points") {
        const double v = parse_double(key, value);
        if (!(v >= 2.0) || v != static_cast<double>(static_cast<std::size_t>(v))) {
            throw config_error("rho-z-points must be an integer >= 2");
        }
        cfg.rho_z_points = static_cast<std::size_t>(v);
    } else if (key == "rho-z-min") {
        cfg.rho_z_min = parse_double(key, value);
    } else if (key == "rho-z-max") {
        cfg.rho_z_max = parse_double(key, value);
    } else if (key == "alpha") {
        cfg.half.alpha = parse_double(key, value);
    } else if (key == "optimize-alpha") {
        cfg.optimize_alpha = parse_bool(key, value);
    } else if (key == "p1") {
        cfg.full.p1 = parse_double(key, value);
    } else if (key == "p2") {
        cfg.full.p2 = cfg.half.p2 = parse_double(key, value);
    } else if (key == "p1-1") {
        cfg.half.p1_1 = parse_double(key, value);
    } else if (key == "p1-2") {
        cfg.half.p1_2 = parse_double(key, value);
    } else if (key == "af-p1-1") {
        cfg.af_p1_1 = parse_double(key, value);
    } else if (key == "af-p2") {
        cfg.af_p2 = parse_double(key, value);
    } else if (key == "power-policy") {
        if (value == "fixed") {
            cfg.power_policy = PowerPolicy::fixed;
        } else if (value == "optimal-cf") {
            cfg.power_policy = PowerPolicy::optimal_cf;
        } else if (value == "optimal-af") {
            cfg.power_policy = PowerPolicy::optimal_af;
        } else {
            throw config_error("power-policy must be fixed, optimal-cf or optimal-af");
        }
    } else if (key == "pt") {
        cfg.pt = parse_double(key, value);
    } else if (key == "out") {
        cfg.out = std::string(value);
    } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(parse_double(key, value));
    } else {
        throw config_error("unknown setting '" + std::string(key) + "'");
    }
}

/// Reads a key=value file. Blank lines and lines starting with '#' are skipped.
inline void load_config_file(SweepConfig& cfg, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw config_error("cannot open config file '" + path.string() + "'");
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto text = detail::trim(line);
        if (text.empty() || text.front() == '#') {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw config_error(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        }
        try {
            apply_setting(cfg, detail::trim(text.substr(0, eq)), detail::trim(text.substr(eq + 1)));
        } catch (const config_error& e) {
            throw config_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

} // namespace relaynoise::harness
