"""Independent arbitrary-precision oracle for the frozen expected values used in
the C++ unit tests. Run with `python3 frozen_values.py`; nothing here shares
code with the library."""
import mpmath as mp

mp.mp.dps = 40


def rate(gamma, d, T, w):
    return gamma * w**d * (1 + 1 / (mp.e ** (w / T) - 1))


def maser_flux(xc, xh, Tc, Th, dc, dh, gc, gh):
    wc, wh = xc * Tc, xh * Th
    Gc, Gh = rate(gc, dc, Tc, wc), rate(gh, dh, Th, wh)
    num = Gh * Gc * (mp.e ** (-wc / Tc) - mp.e ** (-wh / Th))
    den = Gh * (1 + 2 * mp.e ** (-wh / Th)) + Gc * (1 + 2 * mp.e ** (-wc / Tc))
    return num / den


def bisect(f, lo, hi, n=200):
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    flo = f(lo)
    for _ in range(n):
        mid = (lo + hi) / 2
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def lambert_bisect(x):
    return bisect(lambda w: w * mp.e**w - x, -1, 0)


def powerlaw_engine_norm(d, eta):
    d, eta = mp.mpf(d), mp.mpf(eta)
    r = mp.sqrt(d**2 * eta**2 - 4 * eta + 4)
    return (2 + d * eta - r) / (2 * (d + 1) * eta)


def powerlaw_engine_c1(d, eta):
    d, eta = mp.mpf(d), mp.mpf(eta)
    r = mp.sqrt(d**2 * eta**2 - 4 * eta + 4)
    return (d * (2 - eta) + r) / (2 * (d + 1) * (1 - eta))


vals = {
    "relaxation_rate(T=10,d=3,g=1,w=1)": rate(1, 3, 10, mp.mpf(1)),
    "maser_flux(Tc=5,Th=10,d=3,g=1,wh=1,xc=0.05)": maser_flux(mp.mpf("0.05"), mp.mpf("0.1"), 5, 10, 3, 3, 1, 1),
    "W0(-2e^-2)": lambert_bisect(-2 * mp.e**-2),
    "W0(-4e^-4)": lambert_bisect(-4 * mp.e**-4),
    "saturation(d=1)": 2 + lambert_bisect(-2 * mp.e**-2),
    "saturation(d=3)": 4 + lambert_bisect(-4 * mp.e**-4),
    "powerlaw_engine_norm(d=3,eta=0.5)": powerlaw_engine_norm(3, "0.5"),
    "powerlaw_engine_c1(d=3,eta=0.5)": powerlaw_engine_c1(3, "0.5"),
    "curzon_ahlborn(0.01)": 1 - mp.sqrt(mp.mpf("0.99")),
}
for k, v in vals.items():
    print(f"{k:48s} {mp.nstr(v, 20)}")
