#pragma once

#include <stdexcept>
#include <string>

namespace relaynoise {

/// Base for every argument/domain failure raised by the rate formulas.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// |rho_z| too close to 1 for a formula that divides by (1 - rho_z^2).
class correlation_singularity_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// The relay-destination link carries no power (gamma32 * P2 == 0).
class no_relay_channel_error : public domain_error {
public:
    using domain_error::domain_error;
};

/// A link gain is zero where the formula needs it strictly positive.
class degenerate_channel_error : public domain_error {
public:
    using domain_error::domain_error;
};

namespace detail {

inline void require(bool ok, const char* what)
{
    if (!ok) {
        throw domain_error(what);
    }
}

} // namespace detail
} // namespace relaynoise
