#!/usr/bin/env python3
# Copyright 2026 The fdran Authors
# SPDX-License-Identifier: Apache-2.0

"""Generate the BICM capacity tables used by the MIESM effective-SNR mapping.

For Gray-mapped square QAM the BICM capacity splits into two identical
per-dimension PAM terms, so each table is computed from a 1-D integral:

    deficit(s) = 2 * sum_bits E[ log2(1 + sum_{x' in X_{!b}} p(y|x') / sum_{x' in X_b} p(y|x')) ]

with unit-energy PAM and per-dimension noise variance 1/s.  The table stores
ln(capacity) and ln(deficit) on a uniform dB grid so that both the low-SNR
and the saturated end keep full relative precision.

Usage: gen_bicm_table.py > core/src/phy/bicm_table.inc
"""

import math
import sys

import numpy as np
from scipy import integrate

DB_MIN = -30.0
DB_STEP = 0.25
DB_MAX = 40.0
DEFICIT_FLOOR = 1e-30


def gray_pam(bits):
    """Unit-energy Gray PAM levels, returned as (level, bit tuple) pairs."""
    m = 1 << bits
    levels = []
    for label in range(m):
        b = [(label >> (bits - 1 - i)) & 1 for i in range(bits)]
        # 3GPP-style recursive Gray construction: (1-2b0)(2^{k-1} - (1-2b1)(2^{k-2} - ...))
        mag = 0
        if bits == 1:
            mag = 1
        elif bits == 2:
            mag = 2 - (1 - 2 * b[1])
        elif bits == 3:
            mag = 4 - (1 - 2 * b[1]) * (2 - (1 - 2 * b[2]))
        levels.append(((1 - 2 * b[0]) * mag, tuple(b)))
    energy = sum(l * l for l, _ in levels) / m
    return [(l / math.sqrt(energy), b) for l, b in levels]


def pam_deficit(bits, snr):
    sigma = 1.0 / math.sqrt(snr)
    pts = gray_pam(bits)
    xs = np.array([p[0] for p in pts])
    total = 0.0
    for i in range(bits):
        same = {0: np.array([p[1][i] == 0 for p in pts]), 1: np.array([p[1][i] == 1 for p in pts])}
        for x, label in pts:
            b = label[i]

            def integrand(t, x=x, b=b):
                y = x + sigma * t
                e = -((y - xs) ** 2) / (2.0 * sigma * sigma)
                lo = e[~same[b]]
                hi = e[same[b]]
                r = np.logaddexp.reduce(lo) - np.logaddexp.reduce(hi)
                return np.logaddexp(0.0, r) / math.log(2.0) * math.exp(-0.5 * t * t) / math.sqrt(2 * math.pi)

            # breakpoints where the posterior flips: midpoints between levels
            mids = sorted(((a + c) / 2.0 - x) / sigma for a in xs for c in xs if a < c)
            lim = 60.0
            brk = [m for m in mids if -lim < m < lim]
            val, _ = integrate.quad(integrand, -lim, lim, points=brk or None,
                                    epsabs=0.0, epsrel=1e-11, limit=1000)
            total += val
    return total / len(pts)


def table(bits_per_dim):
    theta = 2 * bits_per_dim
    rows = []
    db = DB_MIN
    while db <= DB_MAX + 1e-9:
        s = 10.0 ** (db / 10.0)
        deficit = 2.0 * pam_deficit(bits_per_dim, s)
        cap = theta - deficit
        if deficit < DEFICIT_FLOOR:
            break
        rows.append((db, math.log(cap), math.log(deficit)))
        db += DB_STEP
    lnc = [r[1] for r in rows]
    lnd = [r[2] for r in rows]
    # ln(capacity) is only evaluated below the half-capacity knot
    half = next(i for i, r in enumerate(rows) if math.exp(r[1]) >= theta / 2.0)
    assert all(b > a for a, b in zip(lnc[:half + 2], lnc[1:half + 2])), "capacity not increasing"
    assert all(b < a for a, b in zip(lnd, lnd[1:])), "deficit not decreasing"
    return rows


def main():
    out = sys.stdout
    out.write("// Copyright 2026 The fdran Authors\n// SPDX-License-Identifier: Apache-2.0\n\n")
    out.write("// Generated by scripts/gen_bicm_table.py. Do not edit.\n")
    out.write("// Columns: SNR [dB], ln(BICM capacity), ln(Theta - capacity).\n\n")
    for name, bits in (("kQpsk", 1), ("kQam16", 2), ("kQam64", 3)):
        rows = table(bits)
        out.write(f"constexpr double {name}Table[][3] = {{\n")
        for db, lc, ld in rows:
            out.write(f"    {{{db:.2f}, {lc:.17g}, {ld:.17g}}},\n")
        out.write("};\n\n")


if __name__ == "__main__":
    main()
