#!/usr/bin/env python3
# Copyright 2026 The udw Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the wavefunction and profile tables used by the tests."""
import numpy as np
from pathlib import Path

HERE = Path(__file__).resolve().parent


def grid(half, n):
    return np.array([-half + 2.0 * half * i / (n - 1) for i in range(n)])


def trapz_norm(x, psi):
    h = x[1] - x[0]
    w = np.full_like(x, h)
    w[0] = w[-1] = 0.5 * h
    return float(np.sum(w * np.abs(psi) ** 2))


def write(name, x, values, comment):
    with open(HERE / name, "w") as f:
        f.write(f"# {comment}\n# x value\n")
        for xi, vi in zip(x, values):
            f.write(f"{xi:.17g} {vi:.17g}\n")


def normalised(x, psi):
    return psi / np.sqrt(trapz_norm(x, psi))


x = grid(10.0, 2001)
write("gaussian_ground.dat", x, normalised(x, np.exp(-x * x / 2)),
      "Gaussian ground state, s = 1")

x = grid(12.0, 2401)
write("oscillator_excited.dat", x, normalised(x, x * np.exp(-x * x / 2)),
      "first excited oscillator state")

x = grid(60.0, 6001)
write("softcore_ground.dat", x, normalised(x, np.exp(-np.sqrt(1 + x * x))),
      "soft-core hydrogen-like ground state")
write("softcore_excited.dat", x, normalised(x, x * np.exp(-np.sqrt(1 + x * x) / 2)),
      "soft-core hydrogen-like excited state")

# Tabulated smearing: Gaussian of width 1 sampled on [-12, 12].
x = grid(12.0, 481)
write("gaussian_profile.dat", x, np.exp(-x * x / 2) / np.sqrt(2 * np.pi),
      "Gaussian profile, L = 1")
