"""High-precision reference values for the unit and acceptance tests.

Every quantity is computed from scratch with mpmath at 50 digits; nothing
here calls the C++ library. Run: python3 tests/oracles/freeze_values.py
"""

import mpmath as mp

mp.mp.dps = 50


def gamma(x):
    return mp.log(1 + x, 2) / 2


def line(d):
    d = mp.mpf(d)
    return 1 / d**2, 1 / (1 - d) ** 2, mp.mpf(1)  # g21, g32, g31


def bisect_crossing(f_inc, f_dec, lo=mp.mpf(0), hi=mp.mpf(1)):
    if f_inc(lo) >= f_dec(lo):
        return lo, f_dec(lo)
    if f_inc(hi) <= f_dec(hi):
        return hi, f_inc(hi)
    for _ in range(200):
        mid = (lo + hi) / 2
        if f_inc(mid) < f_dec(mid):
            lo = mid
        else:
            hi = mid
    return lo, f_inc(lo)


def golden_max(f, lo, hi, iters=300):
    phi = (mp.sqrt(5) - 1) / 2
    a, b = mp.mpf(lo), mp.mpf(hi)
    for _ in range(iters):
        c, d = b - phi * (b - a), a + phi * (b - a)
        if f(c) < f(d):
            a = c
        else:
            b = d
    x = (a + b) / 2
    return x, f(x)


def ub_full(g21, g32, g31, rho, p1, p2):
    c1 = lambda rx: gamma(g31 * p1 + g32 * p2 + 2 * rx * mp.sqrt(g31 * p1 * g32 * p2))
    bg = (g21 + g31 - 2 * rho * mp.sqrt(g21 * g31)) / (1 - rho**2)
    c2 = lambda rx: gamma(p1 * (1 - rx**2) * bg)
    return bisect_crossing(c1, c2)


def df_full(g21, g32, g31, p1, p2):
    coop = lambda rx: gamma(g31 * p1 + g32 * p2 + 2 * rx * mp.sqrt(g31 * p1 * g32 * p2))
    dec = lambda rx: gamma(g21 * p1 * (1 - rx**2))
    return bisect_crossing(coop, dec)


def cf_full(g21, g32, g31, rho, p1, p2):
    s = 1 - rho**2
    nw = (s + (g21 + g31 - 2 * rho * mp.sqrt(g21 * g31)) * p1) / (g32 * p2)
    innov = (rho * mp.sqrt(g31) - mp.sqrt(g21)) ** 2
    return gamma(p1 * (g31 + innov / (s + nw)))


def af(g21, g32, g31, rho, p1, p2):
    innov = (rho * mp.sqrt(g31) - mp.sqrt(g21)) ** 2
    relayed = g32 * p2 * innov * p1 / (1 + g21 * p1 + g32 * p2 * (1 - rho**2))
    return gamma(g31 * p1 + relayed) / 2


def main():
    g = line("0.4")
    rho0 = mp.mpf(0)
    out = {}
    bg = g[0] + g[2]
    out["c1_rho_x0_d04"] = gamma(g[2] + g[1])
    out["c2_rho_x0_d04"] = gamma(bg)
    out["ub_full_d04_rho_x"], out["ub_full_d04"] = ub_full(*g, rho0, 1, 1)
    out["df_full_d04_rho_x"], out["df_full_d04"] = df_full(*g, 1, 1)
    out["cf_full_d04"] = cf_full(*g, rho0, 1, 1)
    out["cf_full_d04_p2_2"] = cf_full(*g, rho0, 1, 2)
    out["nw_full_d04_rho0"] = (1 + (g[0] + g[2]) * 1) / g[1]
    out["nw_full_d04_rho1"] = ((g[0] + g[2] - 2 * mp.sqrt(g[0] * g[2]))) / g[1]
    pt = mp.mpf(2)
    out["cf_alloc_d04_p1"], out["cf_alloc_d04_rate"] = golden_max(lambda x: cf_full(*g, rho0, x, pt - x), 0, pt)
    g8 = line("0.8")
    out["af_rate_d08"] = af(*g8, rho0, 2, 2)
    out["af_alloc_d08_p1"], out["af_alloc_d08_rate"] = golden_max(lambda x: af(*g8, rho0, x, 2 * pt - x), 0, 2 * pt)
    # A correlated case where the closed form must come from the MRC rate itself.
    rho = mp.mpf("-0.49")
    out["af_alloc_d08_rho_m049_p1"], _ = golden_max(lambda x: af(*g8, rho, x, 2 * pt - x), 0, 2 * pt)
    for k, v in out.items():
        print(f"{k} = {mp.nstr(v, 17)}")


if __name__ == "__main__":
    main()
