"""Deterministic sample-point generation for the verification suites."""

from __future__ import annotations

import zlib
from fractions import Fraction

import numpy as np

from .rational import GaussianRational

# small rational lattice for exact-backend sampling
_LATTICE = [
    Fraction(0),
    Fraction(1, 2),
    Fraction(-1, 3),
    Fraction(1, 4),
    Fraction(2, 5),
    Fraction(-1, 5),
    Fraction(1, 3),
    Fraction(-1, 2),
    Fraction(3, 7),
    Fraction(-2, 7),
]


def rng_for(seed: int, tag: str) -> np.random.Generator:
    # zlib.crc32 is stable across processes, unlike hash()
    return np.random.default_rng([seed, zlib.crc32(tag.encode())])


def chart_points(m: int, count: int, seed: int, backend: str = "float",
                 tag: str = "chart") -> list:
    """Chart samples with |z_j| <= 2 (rejection); exact points on a lattice."""
    if backend == "exact":
        rng = np.random.default_rng(seed)
        pts = []
        for _ in range(count):
            pt = []
            for _ in range(m):
                re = _LATTICE[rng.integers(len(_LATTICE))]
                im = _LATTICE[rng.integers(len(_LATTICE))]
                pt.append(GaussianRational(re, im))
            pts.append(pt)
        return pts
    rng = rng_for(seed, tag)
    pts = []
    while len(pts) < count:
        z = rng.uniform(-1.0, 1.0, size=2 * m)
        pt = [complex(z[2 * j], z[2 * j + 1]) for j in range(m)]
        if max(abs(v) for v in pt) <= 2.0:
            pts.append(pt)
    return pts


def radii(count: int, seed: int, lo: float = 0.5, hi: float = 2.0) -> list:
    rng = rng_for(seed, "radius")
    return [float(r) for r in rng.uniform(lo, hi, size=count)]


def angles(count: int, seed: int) -> list:
    rng = rng_for(seed, "angle")
    return [float(a) for a in rng.uniform(0.0, 2.0 * np.pi, size=count)]


def fiber_values(count: int, seed: int, lo: float = 0.3, hi: float = 1.5) -> list:
    rng = rng_for(seed, "fiber")
    out = []
    for _ in range(count):
        r = rng.uniform(lo, hi)
        a = rng.uniform(0.0, 2.0 * np.pi)
        out.append(complex(r * np.cos(a), r * np.sin(a)))
    return out
