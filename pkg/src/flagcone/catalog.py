"""Named flag manifolds, their circle bundles, and example registry."""

from __future__ import annotations

from .kahler import PotentialSpec, anticanonical_potential
from .lie import CREPANT, crepancy_check


def recognize_base(rank: int, theta) -> str | None:
    """Name X_P when it is a projective space, Grassmannian or full flag."""
    theta = frozenset(theta)
    sigma = frozenset(range(1, rank + 1))
    if theta == frozenset():
        if rank == 1:
            return "CP^1"
        return f"SU({rank + 1})/T^{rank}"
    missing = sigma - theta
    if len(missing) == 1:
        (k,) = missing
        if k == 1 or k == rank:
            return f"CP^{rank}"
        return f"Gr({k}, C^{rank + 1})"
    return None


def link_name(rank: int, theta, ell: int, fano: int) -> str | None:
    """Name of the circle-bundle total space when it is classical."""
    theta = frozenset(theta)
    sigma = frozenset(range(1, rank + 1))
    missing = sigma - theta
    projective = theta == frozenset() and rank == 1 or (
        len(missing) == 1 and next(iter(missing)) in (1, rank)
    )
    if projective:
        n = rank
        if ell == 1:
            return f"S^{2 * n + 1}"
        if n == 1 and ell == 2:
            return "RP^3"
        return f"S^{2 * n + 1}/Z_{ell}"
    if len(missing) == 1 and (rank, next(iter(missing))) == (3, 2):
        return "V_2(R^6)" if ell == 1 else f"V_2(R^6)/Z_{ell}"
    if theta == frozenset() and rank == 2:
        return "X_{1,1}" if ell == 1 else f"X_{{1,1}}/Z_{ell}"
    return None


def describe(spec: PotentialSpec) -> dict:
    """Structured info block: dimensions, delta_P, pairings, index, names."""
    pc = spec.parabolic
    comp = [str(r) for r in pc.complement_roots]
    base = recognize_base(pc.rank, pc.theta)
    return {
        "series": "A",
        "rank": pc.rank,
        "theta": sorted(pc.theta),
        "ell": pc.ell,
        "dim_complex": pc.dim_complex,
        "complement_roots": comp,
        "delta_p": list(pc.delta_p),
        "pairings": {str(a): v for a, v in sorted(pc.pairings.items())},
        "fano_index": pc.fano_index,
        "picard_rank_b2": pc.picard_rank,
        "crepancy": crepancy_check(pc.ell, pc.fano_index),
        "base_manifold": base,
        "link_manifold": link_name(pc.rank, pc.theta, pc.ell, pc.fano_index),
        "canonical_bundle_power": f"{pc.ell}/{pc.fano_index}",
    }


# Named configurations that appear throughout the test and demo suites:
# (rank, theta, ell)
EXAMPLES = {
    "hopf": (1, frozenset(), 1),           # S^3 over CP^1
    "rp3": (1, frozenset(), 2),            # RP^3 over CP^1, crepant
    "lens_s5_z3": (2, frozenset({2}), 3),  # S^5/Z_3 over CP^2, crepant
    "s5": (2, frozenset({2}), 1),          # S^5 over CP^2
    "stiefel": (3, frozenset({1, 3}), 1),  # V_2(R^6) over Gr(2, C^4)
    "stiefel_z4": (3, frozenset({1, 3}), 4),
    "su3_t2": (2, frozenset(), 2),         # Q(K) over the full flag SU(3)/T^2
    "su3_t2_l1": (2, frozenset(), 1),
    "gr2_c5": (4, frozenset({1, 3, 4}), 1),
    "su4_t3": (3, frozenset(), 1),
}


def example_spec(name: str) -> PotentialSpec:
    rank, theta, ell = EXAMPLES[name]
    return anticanonical_potential(rank, theta, ell)


def is_crepant(spec: PotentialSpec) -> bool:
    return spec.parabolic.crepancy() == CREPANT
