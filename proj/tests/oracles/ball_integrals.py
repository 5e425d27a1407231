#!/usr/bin/env python3
# Copyright 2026 The cmfock Authors
# SPDX-License-Identifier: Apache-2.0
"""Exact integrals over the unit ball and unit sphere, by symbolic integration
in spherical coordinates."""
import json
import sys

import sympy as sp

r, t, p = sp.symbols("r theta phi", nonnegative=True)
x = r * sp.sin(t) * sp.cos(p)
y = r * sp.sin(t) * sp.sin(p)
z = r * sp.cos(t)

VOLUME = {
    "1 + x^2 + 2 y^2 z^2 + x z": 1 + x**2 + 2 * y**2 * z**2 + x * z,
    "exp(z) * (1 + x y)": sp.exp(z) * (1 + x * y),
}
SPHERE = {
    "(3 z^2 - 1)^2": (3 * z**2 - 1) ** 2,
    "x^2 y^2 + 3 x z + 1": x**2 * y**2 + 3 * x * z + 1,
}


def ball(expr):
    return sp.integrate(sp.integrate(sp.integrate(expr * r**2 * sp.sin(t), (p, 0, 2 * sp.pi)), (t, 0, sp.pi)), (r, 0, 1))


def sphere(expr):
    e = expr.subs(r, 1)
    return sp.integrate(sp.integrate(e * sp.sin(t), (p, 0, 2 * sp.pi)), (t, 0, sp.pi))


def main():
    out = {"volume": [], "sphere": []}
    for name, e in VOLUME.items():
        v = sp.simplify(ball(e))
        out["volume"].append({"density": name, "exact": str(v), "value": float(sp.N(v, 30))})
    for name, e in SPHERE.items():
        v = sp.simplify(sphere(e))
        out["sphere"].append({"density": name, "exact": str(v), "value": float(sp.N(v, 30))})
    json.dump(out, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
