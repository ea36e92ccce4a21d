"""Reference values frozen into the unit tests.

Everything here is computed independently of the C++ sources: mpmath for
closed forms and series, statsmodels/scipy for the test statistics, and a
direct transcription of the xoshiro256** / SplitMix64 reference code.

    python3 tests/oracles/generate.py
"""
import math

import mpmath as mp
import numpy as np
from scipy import stats
from statsmodels.stats.diagnostic import acorr_ljungbox

mp.mp.dps = 40
M64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z):
    z = (z + 0) & M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
    return z ^ (z >> 31)


def rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & M64


class Xoshiro:
    def __init__(self, seed):
        self.s = [mix64((seed + k * GOLDEN) & M64) for k in range(1, 5)]

    def next(self):
        s = self.s
        result = (rotl((s[1] * 5) & M64, 7) * 9) & M64
        t = (s[1] << 17) & M64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = rotl(s[3], 45)
        return result

    def uniform(self):
        return ((self.next() >> 11) + 0.5) * 2.0 ** -53


def substream_seed(master, index):
    return mix64(master ^ mix64((index + GOLDEN) & M64))


def section(title):
    print(f"\n# {title}")


def rng_vectors():
    section("rng")
    print("mix64(0) =", hex(mix64(0)))
    print("mix64(1) =", hex(mix64(1)))
    g = Xoshiro(20240601)
    print("seed 20240601 first five:", [hex(g.next()) for _ in range(5)])
    g = Xoshiro(0)
    print("seed 0 first three:", [hex(g.next()) for _ in range(3)])
    g = Xoshiro(20240601)
    print("seed 20240601 first uniform: %.17g" % g.uniform())
    for i in (0, 1, 2, 12345):
        print(f"substream_seed(20240601, {i}) =", hex(substream_seed(20240601, i)))


def theory_values():
    section("theory")
    def tail_ratio_ar1(phi, g, p):
        phi = mp.mpf(phi)
        a = abs(phi) ** (1 / mp.mpf(g))
        if phi >= 0:
            return 1 / (1 - a)
        # psi_j alternates in sign: even j positive, odd j negative
        pos = 1 / (1 - a * a)
        neg = a / (1 - a * a)
        return (p * pos + (1 - p) * neg) / p

    def hill_avar_series(phi, g, terms=4000):
        g = mp.mpf(g)
        w = [abs(mp.mpf(phi)) ** (j / g) for j in range(terms)]
        norm = mp.fsum(w)
        # sum_{j>=1} sum_{i>=0} min(w_j, w_{i+j}) = sum_j sum_i w_{i+j}
        tail = [mp.mpf(0)] * (terms + 1)
        for j in range(terms - 1, -1, -1):
            tail[j] = tail[j + 1] + w[j]
        s = mp.fsum(tail[j] for j in range(1, terms))
        return g * g * (1 + 2 * s / norm)

    for phi, g, p in [(0.8, 0.5, 0.5), (0.8, 0.3, 0.5), (-0.5, 0.5, 0.5), (-0.8, 0.3, 0.3)]:
        print(f"tail_ratio_ar1({phi}, {g}, {p}) = {mp.nstr(tail_ratio_ar1(phi, g, p), 20)}")
    for phi, g in [(0.8, 0.3), (0.8, 0.5), (-0.5, 1.0), (0.2, 0.3)]:
        print(f"hill_avar({phi}, {g}) = {mp.nstr(hill_avar_series(phi, g), 20)}")

    def rmse_ratio(phi, g):
        a = abs(mp.mpf(phi)) ** (1 / mp.mpf(g))
        b = abs(mp.mpf(phi)) ** (1 / mp.mpf(g) + 1)
        return ((1 - b) ** 2 / ((1 - a) ** 2 * (1 + a) ** (2 * g))) ** (1 / (2 * mp.mpf(g) + 1))

    print("rmse_ratio(0.8, 0.3) =", mp.nstr(rmse_ratio(0.8, 0.3), 20))
    print("rmse_ratio(0.5, 0.5) =", mp.nstr(rmse_ratio(0.5, 0.5), 20))

    def second_order(phi, g, p):
        g = mp.mpf(g)
        c, d, ct, dt = mp.mpf(p), -mp.mpf(p) / g, 1 - mp.mpf(p), -(1 - mp.mpf(p)) / g
        dpsi = Dpsi = mp.mpf(0)
        for j in range(5000):
            psi = mp.mpf(phi) ** j
            if psi > 0:
                dpsi += c * psi ** (1 / g)
                Dpsi += c * d * psi ** (1 / g + 1)
            elif psi < 0:
                dpsi += ct * abs(psi) ** (1 / g)
                Dpsi += ct * dt * abs(psi) ** (1 / g + 1)
        return dpsi, Dpsi

    for args in [(0.8, 0.3, 0.5), (-0.6, 0.5, 0.3)]:
        dpsi, Dpsi = second_order(*args)
        print(f"second_order{args}: d = {mp.nstr(dpsi, 20)}, D = {mp.nstr(Dpsi, 20)}")


def distributions():
    section("distributions")
    print("two-sided g=0.5 p=0.5 quantile(0.999) = %.17g" % float(mp.mpf(0.002) ** -0.5))
    print("shifted g=0.3 quantile(0.75) = %.17g" % float(mp.mpf(0.5) ** -0.3 - 1))
    print("shifted g=0.3 quantile(0.9999) = %.17g" % float(mp.mpf(0.0002) ** -0.3 - 1))
    print("two-sided g=0.5 p=0.3 quantile(0.1) = %.17g" % float(-(mp.mpf(0.1) / 0.7) ** -0.5))
    print("shifted g=0.3 p=0.5 survival(2.5) = %.17g" % float(0.5 * mp.mpf(3.5) ** (-1 / mp.mpf(0.3))))


def special():
    section("special functions")
    for x in [-8, -3.5, -1.96, -1, -0.25, 0, 0.3, 1, 1.644853626951, 2.5, 5, 7.5]:
        print("normal_cdf(%s) = %.17g" % (x, float(mp.ncdf(x))))
    for a, x in [(0.5, 0.1), (0.5, 4.5 / 2), (1, 3), (10, 5), (10, 15), (15, 31.41), (2.5, 0.01), (50, 60)]:
        print("gamma_q(%s, %s) = %.17g" % (a, x, float(mp.gammainc(a, x, mp.inf, regularized=True))))


def test_series():
    # Deterministic series shared with the C++ tests.
    return np.array([math.sin(1.3 * t) + 0.5 * math.cos(0.7 * t * t) + 0.01 * t for t in range(1, 201)])


def white_series():
    return np.array([math.sin(0.731 * t * t) * (1 + 0.3 * math.cos(t)) for t in range(1, 301)])


def diagnostics():
    section("diagnostics")
    w = white_series()
    lb = acorr_ljungbox(w, lags=[1, 3, 10, 20], return_df=True)
    for h, row in lb.iterrows():
        print("white ljung_box h=%d Q = %.17g p = %.17g" % (h, row["lb_stat"], row["lb_pvalue"]))
    x = test_series()
    lb = acorr_ljungbox(x, lags=[1, 5, 20], return_df=True)
    for h, row in lb.iterrows():
        print("ljung_box h=%d Q = %.17g p = %.17g" % (h, row["lb_stat"], row["lb_pvalue"]))
    n = len(x)
    tp = sum(1 for i in range(1, n - 1)
             if (x[i - 1] < x[i] > x[i + 1]) or (x[i - 1] > x[i] < x[i + 1]))
    mu, var = 2 * (n - 2) / 3, (16 * n - 29) / 90
    z = (tp - mu) / math.sqrt(var)
    print("turning points =", tp, "z = %.17g p = %.17g" % (z, 2 * stats.norm.sf(abs(z))))
    ds = sum(1 for i in range(1, n) if x[i] > x[i - 1])
    mu, var = (n - 1) / 2, (n + 1) / 12
    z = (ds - mu) / math.sqrt(var)
    print("rising steps =", ds, "z = %.17g p = %.17g" % (z, 2 * stats.norm.sf(abs(z))))
    xc = x - x.mean()
    print("fit_ar1 centred = %.17g" % (np.dot(xc[:-1], xc[1:]) / np.dot(xc, xc)))
    print("fit_ar1 uncentred = %.17g" % (np.dot(x[:-1], x[1:]) / np.dot(x, x)))


def estimators():
    section("estimators")
    x = test_series()
    desc = np.sort(x)[::-1]
    for k in (5, 20, 60):
        h = np.mean(np.log(desc[:k])) - math.log(desc[k])
        print("hill k=%d = %.17g" % (k, h))
    k, t, n = 20, 0.001, len(x)
    h = np.mean(np.log(desc[:k])) - math.log(desc[k])
    print("weissman direct k=20 t=0.001 = %.17g" % (desc[k] * (k / (n * t)) ** h))
    xc = x - x.mean()
    phi = np.dot(xc[:-1], xc[1:]) / np.dot(xc, xc)
    z = x[1:] - phi * x[:-1]
    zd = np.sort(z)[::-1]
    m = len(z)
    gz = np.mean(np.log(zd[:k])) - math.log(zd[k])
    u = max(1 - abs(phi) ** (1 / gz), 1e-6) * t
    print("weissman model k=20 t=0.001 = %.17g (gamma %.17g)" % (zd[k] * (m * u / k) ** (-gz), gz))


def kde():
    section("kde")
    x = test_series()
    sd = np.std(x, ddof=1)
    iqr = np.quantile(x, 0.75) - np.quantile(x, 0.25)
    h = 1.06 * min(sd, iqr / 1.34) * len(x) ** -0.2
    print("silverman = %.17g" % h)
    for g in (-1.0, 0.0, 0.5, 2.0):
        d = np.mean(stats.norm.pdf((g - x) / h)) / h
        print("density(%s) = %.17g" % (g, d))


def sre():
    section("sre two-point driver A in {2, 1/2}, p_up = 1/3")
    # E min(W_j, 1) with log2 W_j a +-1 walk, by exact binomial enumeration.
    p = mp.mpf(1) / 3
    total = mp.mpf(0)
    for j in range(1, 201):
        s = mp.mpf(0)
        for u in range(j + 1):
            e = 2 * u - j
            s += mp.binomial(j, u) * p ** u * (1 - p) ** (j - u) * min(mp.mpf(2) ** e, 1)
        total += s
    print("hill avar J=200 = %s" % mp.nstr(1 + 2 * total, 20))


if __name__ == "__main__":
    rng_vectors()
    theory_values()
    distributions()
    special()
    diagnostics()
    estimators()
    kde()
    sre()
