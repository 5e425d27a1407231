#!/usr/bin/env python3
# Copyright 2026 The cmfock Authors
# SPDX-License-Identifier: Apache-2.0
"""Brute-force mode enumeration for the d=3 torus Dirac operator sigma.p.

Diagonalizes the 2x2 symbol at every integer momentum with sup-norm <= cutoff
and writes the eigenvalue multiset and sign counts."""
import itertools
import json
import sys

import numpy as np

SIGMA = [np.array([[0, 1], [1, 0]], complex),
         np.array([[0, -1j], [1j, 0]], complex),
         np.array([[1, 0], [0, -1]], complex)]


def enumerate_modes(cutoff, internal_dim=1):
    eigs = []
    for p in itertools.product(range(-cutoff, cutoff + 1), repeat=3):
        sym = sum(pc * s for pc, s in zip(p, SIGMA))
        for lam in np.linalg.eigvalsh(sym):
            eigs.extend([0.0 if abs(lam) < 1e-12 else float(lam)] * internal_dim)
    plus = sum(1 for e in eigs if e >= 0)
    return {"cutoff": cutoff, "mode_count": len(eigs), "eigenvalues": sorted(eigs),
            "plus": plus, "minus": len(eigs) - plus, "sign_trace": 2 * plus - len(eigs)}


def main():
    out = {"d3": [enumerate_modes(1), enumerate_modes(2)]}
    json.dump(out, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
