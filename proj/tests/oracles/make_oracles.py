"""Regenerates tests/oracle_values.hpp from independent high-precision
formulas (mpmath / numpy / scipy). Run: python3 tests/oracles/make_oracles.py"""

import itertools
from pathlib import Path

import mpmath as mp
import numpy as np
from scipy import stats

mp.mp.dps = 50
out = []


def emit(name, rows, fields):
    out.append(f"struct {name}Case {{ " + " ".join(f"double {f};" for f in fields) + " };")
    out.append(f"inline constexpr {name}Case k{name}[] = {{")
    for r in rows:
        out.append("    {" + ", ".join(mp.nstr(mp.mpf(v), 20)
                                        if not isinstance(v, str) else v for v in r) + "},")
    out.append("};\n")


# Standard normal quantile by root finding on the high-precision cdf.
rows = []
for p in ["1e-300", "1e-20", "1e-5", "0.025", "0.3", "0.5", "0.9", "0.999999"]:
    p = mp.mpf(float(p))  # the double the C++ side sees
    x0 = float(stats.norm.ppf(float(p)))
    rows.append((p, mp.findroot(lambda x: mp.ncdf(x) - p, x0)))
emit("NormQuantile", rows, ["p", "x"])

# Bivariate normal cdf: Phi(h)Phi(k) + int_0^r phi2(h, k; s) ds.
def phi2(h, k, s):
    return mp.exp(-(h * h - 2 * s * h * k + k * k) / (2 * (1 - s * s))) / (2 * mp.pi * mp.sqrt(1 - s * s))

rows = []
for h, k, r in [(0, 0, 0.5), (-1.2, 0.7, -0.6), (1.5, 2.0, 0.9), (-2.5, -3.0, 0.3), (0.3, -0.4, -0.95), (-4, 1, 0.99)]:
    h, k, r = mp.mpf(h), mp.mpf(k), mp.mpf(r)
    rows.append((h, k, r, mp.ncdf(h) * mp.ncdf(k) + mp.quad(lambda s: phi2(h, k, s), [0, r])))
emit("BvnCdf", rows, ["h", "k", "r", "p"])

# Frank's tau from the Debye integral.
def frank_tau(t):
    t = mp.mpf(t)
    return 1 - 4 / t + 4 / t**2 * mp.quad(lambda s: s / mp.expm1(s), [0, t])

emit("FrankTau", [(t, frank_tau(t)) for t in [-8, -1, 0.5, 3, 10, 35]], ["theta", "tau"])

# Clayton (0 degrees) cdf, density and h-function in closed form.
def clayton(u, v, t):
    u, v, t = mp.mpf(u), mp.mpf(v), mp.mpf(t)
    s = u**-t + v**-t - 1
    cdf = s ** (-1 / t)
    pdf = (1 + t) * (u * v) ** (-t - 1) * s ** (-2 - 1 / t)
    h = u ** (-t - 1) * s ** (-1 - 1 / t)  # dC/du = P(V <= v | U = u)
    return cdf, pdf, h

rows = []
for u, v, t in [(0.3, 0.6, 2.0), (0.05, 0.9, 0.7), (0.8, 0.2, 9.0), (0.01, 0.02, 4.0)]:
    rows.append((u, v, t) + clayton(u, v, t))
emit("Clayton", rows, ["u", "v", "theta", "cdf", "pdf", "h"])

# Gauss-Legendre on [0, 1].
x, w = np.polynomial.legendre.leggauss(15)
rows = [(0.5 * (xi + 1), 0.5 * wi) for xi, wi in zip(x, w)]
emit("GaussLegendre15", rows, ["node", "weight"])

# Beta(pi, gamma) quantiles: alpha = pi (1 - gamma) / gamma, beta = (1 - pi)(1 - gamma) / gamma.
def beta_quantile(pi, g, u):
    pi, g, u = mp.mpf(pi), mp.mpf(g), mp.mpf(u)
    a, b = pi * (1 - g) / g, (1 - pi) * (1 - g) / g
    x0 = stats.beta.ppf(float(u), float(a), float(b))
    x0 = min(max(x0, 1e-300), 1 - 1e-16)
    # Solve on the logit scale for tail accuracy.
    f = lambda y: mp.betainc(a, b, 0, 1 / (1 + mp.exp(-y)), regularized=True) - u
    y = mp.findroot(f, mp.log(x0) - mp.log1p(-x0) if 0 < x0 < 1 else 0, tol=mp.mpf(10) ** -40)
    return 1 / (1 + mp.exp(-y)), y

rows = []
for pi, g, u in [(0.9, 0.09, 0.5), (0.06, 0.37, 0.01), (0.11, 0.15, 0.999), (0.77, 0.08, 1e-6),
                 (0.5, 0.5, 0.3), (0.9, 0.09, 1 - 1e-9), (0.2, 0.6, 1e-8)]:
    x, y = beta_quantile(pi, g, u)
    rows.append((pi, g, u, x, y))
emit("BetaQuantile", rows, ["pi", "gamma", "u", "x", "logit_x"])

# Trinomial log pmf.
rows = []
for y, p in [((3, 40, 2), (0.1, 0.85, 0.05)), ((0, 12, 0), (0.2, 0.7, 0.1)), ((17, 5, 9), (0.5, 0.2, 0.3))]:
    lp = mp.loggamma(sum(y) + 1) + sum(k * mp.log(q) - mp.loggamma(k + 1) for k, q in zip(y, map(mp.mpf, p)))
    rows.append(tuple(y) + tuple(p) + (lp,))
emit("Trinomial", rows, ["y0", "y1", "y2", "p0", "p1", "p2", "logpmf"])

# Study log pmf with an independence vine and beta margins: the integral
# factorises into beta functions (trinomial kernels are products of powers).
def lbeta(a, b):
    return mp.loggamma(a) + mp.loggamma(b) - mp.loggamma(a + b)

def lmultinom(ys):
    return mp.loggamma(sum(ys) + 1) - sum(mp.loggamma(y + 1) for y in ys)

def indep_beta_study(tn, fp, ne_neg, fn, tp, ne_pos, pis, gs):
    pis = [mp.mpf(p) for p in pis]
    gs = [mp.mpf(g) for g in gs]
    means = [pis[0], pis[1], pis[2] / (1 - pis[0]), pis[3] / (1 - pis[1])]
    ab = [(m * (1 - g) / g, (1 - m) * (1 - g) / g) for m, g in zip(means, gs)]
    (a1, b1), (a2, b2), (a3, b3), (a4, b4) = ab
    # Diseased: fn ~ (1-x1)(1-x3), tp ~ x1, ne_pos ~ x3 (1-x1).
    dis = (lmultinom([fn, tp, ne_pos]) + lbeta(a1 + tp, b1 + fn + ne_pos) - lbeta(a1, b1)
           + lbeta(a3 + ne_pos, b3 + fn) - lbeta(a3, b3))
    # Non-diseased: tn ~ x2, fp ~ (1-x2)(1-x4), ne_neg ~ x4 (1-x2).
    non = (lmultinom([tn, fp, ne_neg]) + lbeta(a2 + tn, b2 + fp + ne_neg) - lbeta(a2, b2)
           + lbeta(a4 + ne_neg, b4 + fp) - lbeta(a4, b4))
    return dis + non

rows = []
for study, pis, gs in [((40, 5, 3, 2, 50, 4), (0.9, 0.77, 0.06, 0.11), (0.09, 0.08, 0.37, 0.15)),
                       ((120, 30, 10, 8, 60, 2), (0.8, 0.7, 0.05, 0.08), (0.2, 0.1, 0.3, 0.25)),
                       ((7, 1, 0, 0, 9, 0), (0.6, 0.6, 0.1, 0.1), (0.4, 0.4, 0.4, 0.4))]:
    rows.append(tuple(study) + tuple(pis) + tuple(gs) + (indep_beta_study(*study, pis, gs),))
emit("IndepBetaStudy", rows, ["tn", "fp", "ne_neg", "fn", "tp", "ne_pos", "pi1", "pi2", "pi3", "pi4",
                              "g1", "g2", "g3", "g4", "logpmf"])

# Kendall's tau-b with ties.
xs = [1.0, 2.0, 2.0, 3.5, 0.2, 4.0, 4.0, 1.5]
ys = [0.3, 0.1, 0.9, 0.9, -1.0, 2.0, 1.0, 0.3]
out.append("inline constexpr double kKendallX[] = {" + ", ".join(map(str, xs)) + "};")
out.append("inline constexpr double kKendallY[] = {" + ", ".join(map(str, ys)) + "};")
out.append(f"inline constexpr double kKendallTauB = {float(stats.kendalltau(xs, ys).statistic)!r};\n")

header = ["// Generated by tests/oracles/make_oracles.py; do not edit.", "#pragma once", "",
          "namespace oracle {", ""]
Path(__file__).resolve().parents[1].joinpath("oracle_values.hpp").write_text(
    "\n".join(header + out + ["}  // namespace oracle", ""]))
