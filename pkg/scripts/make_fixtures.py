"""Regenerate the golden-value fixtures under tests/fixtures with mpmath oracles.

Every value is computed at high working precision from the defining series
(or by bisection on those series) rather than from the library under test,
then frozen as plain-text CSV.  Run from the repository root:

    python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import csv
from pathlib import Path

import mpmath as mp

mp.mp.dps = 160
OUT = Path(__file__).resolve().parents[1] / "tests" / "fixtures"


def series_m(a, b, x, regularized=False):
    """Kummer series summed term by term until terms drop below 1e-55 of the peak."""
    a, b, x = mp.mpf(a), mp.mpf(b), mp.mpf(x)
    if regularized:
        # term k is (a)_k x^k / (k! Gamma(b + k)); rgamma is zero at the poles.
        total, peak, k = mp.mpf(0), mp.mpf(0), 0
        poch = mp.mpf(1)
        while True:
            t = poch * x**k / mp.factorial(k) * mp.rgamma(b + k)
            total += t
            peak = max(peak, abs(t), abs(total))
            if k > 10 and abs(t) < mp.mpf(10) ** -150 * peak and abs((a + k) * x / ((b + k) * (k + 1))) < 1:
                return total
            if poch == 0 and k > 10:
                return total
            poch *= a + k
            k += 1
    t = mp.mpf(1)
    total, peak, k = t, mp.mpf(1), 0
    while True:
        t = t * (a + k) * x / ((b + k) * (k + 1))
        k += 1
        total += t
        peak = max(peak, abs(t), abs(total))
        if t == 0 or (abs(t) < mp.mpf(10) ** -150 * peak and abs((a + k) * x / ((b + k) * (k + 1))) < 1):
            return total


def abs_series_m(a, b, x):
    return series_m(abs(mp.mpf(a)), b, abs(mp.mpf(x)))


def pcf(nu, z):
    """D_nu(z) from the two-Kummer decomposition with exact 1/Gamma weights."""
    nu, z = mp.mpf(nu), mp.mpf(z)
    x = z * z / 2
    even = mp.sqrt(mp.pi) * mp.rgamma((1 - nu) / 2) * series_m(-nu / 2, mp.mpf(1) / 2, x)
    odd = mp.sqrt(2 * mp.pi) * z * mp.rgamma(-nu / 2) * series_m((1 - nu) / 2, mp.mpf(3) / 2, x)
    return 2 ** (nu / 2) * mp.exp(-z * z / 4) * (even - odd)


def pcf_term_scale(nu, z):
    nu, z = mp.mpf(nu), mp.mpf(z)
    x = z * z / 2
    even = mp.sqrt(mp.pi) * mp.rgamma((1 - nu) / 2) * series_m(-nu / 2, mp.mpf(1) / 2, x)
    odd = mp.sqrt(2 * mp.pi) * z * mp.rgamma(-nu / 2) * series_m((1 - nu) / 2, mp.mpf(3) / 2, x)
    return 2 ** (nu / 2) * mp.exp(-z * z / 4) * (abs(even) + abs(odd))


def series_j(m, x):
    m, x = int(m), mp.mpf(x)
    if m < 0:
        return (-1) ** m * series_j(-m, x)
    total, k = mp.mpf(0), 0
    h = x / 2
    while True:
        t = (-1) ** k * h ** (2 * k + m) / (mp.factorial(k) * mp.factorial(k + m))
        total += t
        if k > x and abs(t) < mp.mpf(10) ** -150:
            return total
        k += 1


def series_i(m, x):
    m, x = abs(int(m)), mp.mpf(x)
    total, k = mp.mpf(0), 0
    h = x / 2
    while True:
        t = h ** (2 * k + m) / (mp.factorial(k) * mp.factorial(k + m))
        total += t
        if k > x and t < mp.mpf(10) ** -150 * total:
            return total
        k += 1


def bisect(fn, lo, hi, iters=200):
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    flo = fn(lo)
    for _ in range(iters):
        mid = (lo + hi) / 2
        fm = fn(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def scan_roots(fn, a, b, step, count=None):
    """Sign-change scan on a uniform grid followed by bisection."""
    roots = []
    n = int(mp.nint((mp.mpf(b) - a) / step))
    xs = [mp.mpf(a) + i * mp.mpf(step) for i in range(n + 1)]
    prev = fn(xs[0])
    for x0, x1 in zip(xs, xs[1:]):
        cur = fn(x1)
        if (prev < 0) != (cur < 0):
            roots.append(bisect(fn, x0, x1))
            if count and len(roots) == count:
                break
        prev = cur
    return roots


def golden_rows():
    rows = []

    def add(function, p1, p2, x, value, rel, floor=0.0):
        rows.append((function, p1, p2, x, mp.nstr(value, 25), mp.nstr(max(rel * abs(value), floor), 3)))

    for x in ["0.5", "1", "1.5", "2.5", "3.7", "6", "10.25", "-0.5", "-2.5", "-7.3", "-12.5", "25.5", "49.5"]:
        add("ln_gamma", "", "", x, mp.log(abs(mp.gamma(mp.mpf(x)))), 1e-12, 1e-13)
    for a in ["-3", "-1.5", "-0.25", "0.5", "2", "7.5", "-12.3"]:
        for b in ["0.5", "1", "1.5", "2", "3.5", "6"]:
            for x in ["-10", "-2.5", "-1", "0.3", "1", "4", "12", "30", "64"]:
                # The floor only matters where the value vanishes identically.
                add("kummer_m", a, b, x, series_m(a, b, x), 1e-10, 1e-30 * abs_series_m(a, b, x))
    for a in ["-2", "-0.5", "1", "2.5"]:
        for b in ["-2", "-1", "0", "0.5", "1", "2"]:
            for x in ["-3", "0.7", "5", "20"]:
                add("kummer_m_regularized", a, b, x, series_m(a, b, x, regularized=True), 1e-10, 1e-300)
    for nu in ["-0.9", "-0.5", "0", "0.3", "1", "1.5", "2", "3.25", "5", "10", "17.5", "30", "-4.5", "-10"]:
        for z in ["0", "0.5", "1", "2", "3.5", "5", "8", "12", "20"]:
            add("pcf_d", nu, "", z, pcf(nu, z), 1e-9, 1e-300)
    for nu in ["-0.9", "0.3", "1.5", "3.25"]:
        for z in ["-0.5", "-2", "-3.5", "-5"]:
            # Negative arguments: tolerance relative to the two Kummer terms,
            # since the function oscillates there and passes through zeros.
            add("pcf_d", nu, "", z, pcf(nu, z), 1e-9, 1e-9 * pcf_term_scale(nu, z))
    for m in [0, 1, 2, 5, 10]:
        for x in ["0.01", "0.5", "1", "2.5", "7", "15", "30", "50", "80", "150", "200"]:
            tol = 1e-12 if float(x) <= 50 else 1e-10
            add("bessel_j", m, "", x, series_j(m, x), 0.0, tol)
    for m in [0, 1, 2, 5]:
        for x in ["0.01", "1", "3", "10", "40", "100", "300"]:
            add("bessel_i_scaled", m, "", x, mp.exp(-mp.mpf(x)) * series_i(m, x), 1e-10, 1e-300)
    return rows


def bessel_zero_rows():
    rows = []
    for m in range(0, 4):
        f = lambda x, m=m: series_j(m, x)
        for k, root in enumerate(scan_roots(f, mp.mpf("0.5"), 20, mp.mpf("0.1"), count=4), 1):
            rows.append((m, k, mp.nstr(root, 20)))
    return rows


def model_root_rows():
    """Roots of reduced residuals evaluated with the oracle series."""
    rows = []
    # Even box, Dirichlet, L = 5: wall value of e^{-x^2/2} M(-nu/2, 1/2, x^2).
    x = mp.mpf(5) ** 2 / 4
    f = lambda nu: series_m(-nu / 2, mp.mpf(1) / 2, x)
    for k, r in enumerate(scan_roots(f, -1, 8, mp.mpf("0.01")), 0):
        rows.append(("sho_even_dirichlet_L5", k, mp.nstr(r, 20)))

    # Narrow box, L = 3: levels far above the oscillator range.
    x = mp.mpf(3) ** 2 / 4
    f = lambda nu: series_m(-nu / 2, mp.mpf(1) / 2, x)
    for k, r in enumerate(scan_roots(f, -1, 350, mp.mpf("0.25")), 0):
        rows.append(("sho_even_dirichlet_L3", k, mp.nstr(r, 20)))

    # Iso disc at nu = 2, m = 0, gamma = 1: residual in R.
    def iso(R):
        a = -mp.mpf(2) / 2
        return (R - 1) * series_m(a, 1, R * R, regularized=True) + R * 2 * series_m(a + 1, 2, R * R, regularized=True)

    for k, r in enumerate(scan_roots(iso, mp.mpf("0.01"), 10, mp.mpf("0.001")), 0):
        rows.append(("iso_nu2_m0_gamma1_radius", k, mp.nstr(r, 20)))

    # Free disc, m = 0, gamma = -50 and -100 (R = 1): bound state kappa.
    for g in (50, 100):
        fn = lambda k, g=g: -g * series_i(0, k) + k * series_i(1, k)
        rows.append((f"free_bound_m0_gamma-{g}", 0, mp.nstr(bisect(fn, 1, g + 10), 20)))
    return rows


def write(name, header, rows):
    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / name, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    print(f"{name}: {len(rows)} rows")


def main():
    write("specfun_golden.csv", ["function", "p1", "p2", "x", "expected", "abs_tol"], golden_rows())
    write("bessel_zeros.csv", ["m", "k", "zero"], bessel_zero_rows())
    write("model_roots.csv", ["case", "index", "root"], model_root_rows())


if __name__ == "__main__":
    main()
