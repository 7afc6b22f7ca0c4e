#pragma once

#include <relaynoise/error.hpp>

#include <cmath>
#include <cstddef>
#include <utility>

namespace relaynoise::scalaropt {

struct Interval {
    double lo;
    double hi;

    Interval(double lo_, double hi_) : lo(lo_), hi(hi_)
    {
        detail::require(std::isfinite(lo) && std::isfinite(hi), "Interval: bounds must be finite");
        detail::require(lo < hi, "Interval: lo must be < hi");
    }

    double width() const { return hi - lo; }
};

struct Optimum {
    double x;
    double value;
    std::size_t iterations = 0;
};

/// max over x of min(f_inc(x), f_dec(x)) for f_inc nondecreasing and f_dec
/// nonincreasing on iv. The optimum is either a boundary or the unique
/// crossing point, located by bisection on f_inc - f_dec. Ties resolve to lo.
template <class Inc, class Dec>
Optimum maxmin_monotone(Inc&& f_inc, Dec&& f_dec, Interval iv, double tol = 1e-10)
{
    detail::require(tol > 0.0, "maxmin_monotone: tol must be positive");

    const double inc_lo = f_inc(iv.lo);
    const double dec_lo = f_dec(iv.lo);
    if (inc_lo >= dec_lo) {
        return {iv.lo, dec_lo, 0};
    }
    const double inc_hi = f_inc(iv.hi);
    const double dec_hi = f_dec(iv.hi);
    if (inc_hi == inc_lo) {
        // f_inc is flat and below f_dec at lo: every x up to the crossing ties
        return {iv.lo, inc_lo, 0};
    }
    if (inc_hi <= dec_hi) {
        return {iv.hi, inc_hi, 0};
    }

    // invariant: f_inc(lo) < f_dec(lo), f_inc(hi) > f_dec(hi)
    double lo = iv.lo;
    double hi = iv.hi;
    double lo_val = inc_lo;
    double hi_val = dec_hi;
    std::size_t iterations = 0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        const double a = f_inc(mid);
        const double b = f_dec(mid);
        if (a < b) {
            lo = mid;
            lo_val = a;
        } else {
            hi = mid;
            hi_val = b;
        }
        ++iterations;
    }
    // min(f_inc, f_dec) is f_inc at lo and f_dec at hi; both are feasible.
    if (lo_val >= hi_val) {
        return {lo, lo_val, iterations};
    }
    return {hi, hi_val, iterations};
}

/// Brute-force argmax over n uniformly spaced points including both
/// endpoints. Ties go to the smaller x.
template <class F>
Optimum argmax_grid(F&& f, Interval iv, std::size_t n_points)
{
    detail::require(n_points >= 2, "argmax_grid: need at least two points");
    const double step = iv.width() / static_cast<double>(n_points - 1);
    Optimum best{iv.lo, f(iv.lo), n_points};
    for (std::size_t i = 1; i < n_points; ++i) {
        const double x = (i + 1 == n_points) ? iv.hi : iv.lo + step * static_cast<double>(i);
        const double v = f(x);
        if (v > best.value) {
            best.x = x;
            best.value = v;
        }
    }
    return best;
}

inline constexpr double golden_ratio_conjugate = 0.6180339887498949;

/// Upper bound on golden-section shrink steps needed to reach tol.
inline std::size_t golden_iteration_bound(Interval iv, double tol)
{
    return static_cast<std::size_t>(std::ceil(std::log(iv.width() / tol) / std::log(1.0 / golden_ratio_conjugate))) +
           2;
}

/// Golden-section search for the maximum of a unimodal f on iv. The returned
/// point is the best of the final bracket midpoint and the two endpoints, so
/// monotone objectives resolve to the boundary exactly.
template <class F>
Optimum maximize_unimodal(F&& f, Interval iv, double tol = 1e-8)
{
    detail::require(tol > 0.0, "maximize_unimodal: tol must be positive");

    double a = iv.lo;
    double b = iv.hi;
    double c = b - golden_ratio_conjugate * (b - a);
    double d = a + golden_ratio_conjugate * (b - a);
    double fc = f(c);
    double fd = f(d);
    std::size_t iterations = 0;
    while (b - a > tol) {
        if (fc < fd) {
            a = c;
            c = d;
            fc = fd;
            d = a + golden_ratio_conjugate * (b - a);
            fd = f(d);
        } else {
            b = d;
            d = c;
            fd = fc;
            c = b - golden_ratio_conjugate * (b - a);
            fc = f(c);
        }
        ++iterations;
    }

    Optimum best{0.5 * (a + b), 0.0, iterations};
    best.value = f(best.x);
    for (const double x : {iv.lo, iv.hi}) {
        const double v = f(x);
        if (v > best.value) {
            best.x = x;
            best.value = v;
        }
    }
    return best;
}

} // namespace relaynoise::scalaropt
