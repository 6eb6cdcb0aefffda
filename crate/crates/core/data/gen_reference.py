#!/usr/bin/env python3
"""Regenerates reference_corpus.tsv with mpmath at 60 significant digits.

Rows: function <TAB> args <TAB> value <TAB> precision <TAB> generator-id
Values are printed with 17 significant digits; `precision` is the relative
accuracy of the printed value.
"""
from mpmath import mp, mpf, airyai, besselj, laguerre, hermite, exp, sqrt, pi, factorial, log

mp.dps = 60
GEN = "mpmath-%s-dps60" % __import__("mpmath").__version__


def osc_psi(n, x):
    x = mpf(x)
    # normalised Hermite function via the recurrence at 60 digits
    p0 = pi ** mpf(-0.25) * exp(-x * x / 2)
    if n == 0:
        return p0
    p1 = sqrt(2) * x * p0
    for k in range(1, n):
        p0, p1 = p1, (sqrt(2) * x * p1 - sqrt(k) * p0) / sqrt(k + 1)
    return p1


def fmt(v):
    return "%.16e" % float(v)


rows = []


def row(fn, args, value):
    rows.append("%s\t%s\t%s\t%s\t%s" % (fn, ",".join(repr(a) for a in args), fmt(value), "1e-16", GEN))


for n, x in [(0, 0.0), (1, 0.3), (2, 0.0), (5, 1.7), (10, 0.5), (10, 8.0), (37, -2.25), (100, 20.0),
             (150, 3.3), (500, 0.1), (1000, 5.0), (1000, 44.0), (4000, 12.75), (10000, 100.0), (10000, 141.0), (100000, 3.0)]:
    row("osc_psi", (n, x), osc_psi(n, x))
for n in range(0, 51):
    row("osc_psi", (n, 1.0), osc_psi(n, 1.0))

for t in [-100.0, -73.25, -50.0, -20.0, -10.0, -9.5, -9.0, -8.9, -7.0, -5.0, -2.3, -1.0, 0.0, 0.5, 1.0,
          2.0, 5.0, 7.0, 8.9, 9.0, 9.1, 10.0]:
    row("airy_ai", (t,), airyai(t))
    row("airy_ai_prime", (t,), airyai(t, derivative=1))

for n, a, x in [(0, 1.0, 2.5), (1, 1.0, 2.5), (19, 1.0, 3.7), (30, 0.5, 10.0), (100, 0.5, 50.0), (100, 1.0, 399.0),
                (250, 1.0, 17.0), (1000, 0.5, 1234.5)]:
    row("laguerre_assoc", (n, a, x), laguerre(n, a, x))
for n, a, x in [(19, 1.0, 3.7), (1000, 1.0, 3000.0), (2000, 0.5, 6000.0), (20, 1.0, 200.0)]:
    row("laguerre_weighted", (n, a, x), exp(-mpf(x) / 2) * laguerre(n, a, x))

for x in [0.001, 0.5, 1.0, 2.5, 5.0, 10.0, 17.3, 24.9, 25.1, 40.0, 100.0, 1000.0, 12345.6]:
    row("bessel_j1", (x,), besselj(1, x))

with open(__file__.replace("gen_reference.py", "reference_corpus.tsv"), "w") as f:
    f.write("# Frozen extended-precision reference values.\n")
    f.write("# Regenerate with gen_reference.py; do not edit by hand.\n")
    f.write("# function\targs\tvalue\tprecision\tgenerator\n")
    for r in rows:
        f.write(r + "\n")
