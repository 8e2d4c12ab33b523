"""Type-A root systems and parabolic-derived invariants.

Everything downstream keys off a subset Theta of the simple roots: the
complement of the parabolic span inside the positive roots fixes the chart
dimension, the anticanonical weight delta_P, its Cartan pairings, and the
Fano index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import DegenerateParabolicError, InvalidRankError


@dataclass(frozen=True)
class Root:
    """Positive root eps_i - eps_j (1 <= i < j <= rank+1)."""

    i: int
    j: int
    simple_coeffs: tuple  # coordinates in the simple-root basis

    @property
    def support(self) -> frozenset:
        return frozenset(k + 1 for k, c in enumerate(self.simple_coeffs) if c)

    @property
    def epsilon(self) -> tuple:
        n1 = len(self.simple_coeffs) + 1
        v = [0] * n1
        v[self.i - 1] = 1
        v[self.j - 1] = -1
        return tuple(v)

    def __str__(self):
        bits = []
        for k, c in enumerate(self.simple_coeffs):
            if c == 1:
                bits.append(f"a{k + 1}")
            elif c:
                bits.append(f"{c}*a{k + 1}")
        return "+".join(bits)


@dataclass(frozen=True)
class RootSystemData:
    """Simple roots, positive roots and Cartan matrix of A_n."""

    series: str
    rank: int
    simple_roots: tuple          # ordered eps-basis vectors
    positive_roots: tuple        # Root objects in lexicographic (i, j) order
    cartan_matrix: tuple         # rank x rank tuple of tuples

    def cartan(self) -> np.ndarray:
        return np.array(self.cartan_matrix, dtype=np.int64)


def build_root_system(rank: int) -> RootSystemData:
    """Enumerate the A_rank root data.

    Parameters
    ----------
    rank : int
        Number of simple roots; must be >= 1.
    """
    if not isinstance(rank, int) or rank < 1:
        raise InvalidRankError(f"rank must be a positive integer, got {rank!r}")
    simple = []
    for l in range(1, rank + 1):
        v = [0] * (rank + 1)
        v[l - 1] = 1
        v[l] = -1
        simple.append(tuple(v))
    positive = []
    for i in range(1, rank + 1):
        for j in range(i + 1, rank + 2):
            coeffs = tuple(1 if i <= k + 1 <= j - 1 else 0 for k in range(rank))
            positive.append(Root(i, j, coeffs))
    cartan = tuple(
        tuple(2 if a == b else (-1 if abs(a - b) == 1 else 0) for b in range(rank))
        for a in range(rank)
    )
    return RootSystemData("A", rank, tuple(simple), tuple(positive), cartan)


def _normalize_theta(rs: RootSystemData, theta) -> frozenset:
    theta = frozenset(int(t) for t in theta)
    if not theta <= set(range(1, rs.rank + 1)):
        raise ValueError(f"theta {sorted(theta)} not a subset of 1..{rs.rank}")
    return theta


def parabolic_complement(rs: RootSystemData, theta) -> list:
    """Positive roots whose simple-root support is not contained in theta."""
    theta = _normalize_theta(rs, theta)
    return [r for r in rs.positive_roots if not r.support <= theta]


def delta_p(rs: RootSystemData, theta) -> tuple:
    """Sum of the complement roots, in simple-root coordinates."""
    comp = parabolic_complement(rs, theta)
    acc = [0] * rs.rank
    for r in comp:
        for k, c in enumerate(r.simple_coeffs):
            acc[k] += c
    return tuple(acc)


def pairing(rs: RootSystemData, weight, alpha_index: int) -> int:
    """<weight, h_alpha_j^vee> = sum_i c_i C_ij.

    The weight is given in simple-root coordinates; C is the (symmetric)
    type-A Cartan matrix, so no transpose ambiguity arises here.  Other
    series would have to pin the Killing-form normalization first.
    """
    if not 1 <= alpha_index <= rs.rank:
        raise ValueError(f"alpha index {alpha_index} out of range 1..{rs.rank}")
    col = [row[alpha_index - 1] for row in rs.cartan_matrix]
    return int(sum(int(c) * int(x) for c, x in zip(weight, col)))


def root_pairing(rs: RootSystemData, weight, root: Root) -> int:
    """<weight, h_beta^vee> for a positive root beta (type A: sum over support)."""
    return int(
        sum(
            int(c) * pairing(rs, weight, k + 1)
            for k, c in enumerate(root.simple_coeffs)
            if c
        )
    )


def fano_index(pairings) -> int:
    """gcd of the pairings <delta_P, h_alpha^vee> over alpha in Sigma\\Theta."""
    values = list(pairings.values()) if isinstance(pairings, dict) else list(pairings)
    if not values:
        raise DegenerateParabolicError(
            "theta = Sigma: no Kahler generators, Fano index undefined"
        )
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g


CREPANT = "crepant"
DIVISOR_ROOT = "divisor-root"
NON_ROOT = "non-root"


def crepancy_check(ell: int, fano: int) -> str:
    """Classify the covering integer against the Fano index.

    'crepant' when ell equals the Fano index (the canonical-bundle case),
    'divisor-root' when it properly divides it, 'non-root' otherwise.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if ell == fano:
        return CREPANT
    if fano % ell == 0:
        return DIVISOR_ROOT
    return NON_ROOT


@dataclass(frozen=True)
class ParabolicChoice:
    """A parabolic subset Theta plus its derived invariants."""

    rs: RootSystemData
    theta: frozenset
    complement_roots: tuple
    delta_p: tuple
    pairings: dict = field(compare=False)  # alpha in Sigma\Theta -> positive int
    fano_index: int
    picard_rank: int
    ell: int

    @property
    def rank(self) -> int:
        return self.rs.rank

    @property
    def dim_complex(self) -> int:
        return len(self.complement_roots)

    def crepancy(self) -> str:
        return crepancy_check(self.ell, self.fano_index)


def parabolic_choice(rs: RootSystemData, theta, ell: int = 1) -> ParabolicChoice:
    """Assemble and validate a ParabolicChoice."""
    theta = _normalize_theta(rs, theta)
    if len(theta) == rs.rank:
        raise DegenerateParabolicError("theta = Sigma gives a zero-dimensional X_P")
    if ell < 1:
        raise ValueError("covering integer ell must be >= 1")
    comp = tuple(parabolic_complement(rs, theta))
    dp = delta_p(rs, theta)
    pb = {}
    for a in sorted(set(range(1, rs.rank + 1)) - theta):
        v = pairing(rs, dp, a)
        if v <= 0:
            raise RuntimeError(f"pairing <delta_P, h_{a}> = {v} not positive")
        pb[a] = v
    return ParabolicChoice(
        rs=rs,
        theta=theta,
        complement_roots=comp,
        delta_p=dp,
        pairings=pb,
        fano_index=fano_index(pb),
        picard_rank=len(pb),
        ell=ell,
    )
