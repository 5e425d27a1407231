#!/usr/bin/env python3
# Copyright 2026 The cmfock Authors
# SPDX-License-Identifier: Apache-2.0
"""Continuum value (1/2 pi i) * contour integral of x dy on the circle.

Pairs of real currents x = cos(k phi), y = sin(k phi); the integral is
evaluated with scipy's adaptive quadrature on the derivative form x y'."""
import json
import sys

import numpy as np
from scipy.integrate import quad


def contour_value(k):
    integrand = lambda t: np.cos(k * t) * k * np.cos(k * t)
    val, _ = quad(integrand, 0.0, 2.0 * np.pi, epsabs=1e-13, epsrel=1e-13, limit=200)
    z = val / (2j * np.pi)
    return {"k": k, "x": f"cos({k} phi)", "y": f"sin({k} phi)", "re": z.real, "im": z.imag}


def main():
    json.dump({"pairs": [contour_value(1), contour_value(2), contour_value(3)]}, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
