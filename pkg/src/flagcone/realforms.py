"""Dictionaries between complex Hessians and real tensors.

Conventions (pinned once here, used everywhere):
  g_real = 2 Re( sum g_jk dz^j (x) dzbar^k )   -- Riemannian metric
  omega  = sqrt(-1) sum g_jk dz^j ^ dzbar^k    -- Kahler form
  omega(X, Y) = g_real(JX, Y),  J dx_j = dy_j
Real coordinates interleave as (x_1, y_1, ..., x_m, y_m).
"""

from __future__ import annotations

import numpy as np


def _pairings(m: int):
    """dz^j and dzbar^j evaluated on the real coordinate vectors."""
    dz = np.zeros((m, 2 * m), dtype=complex)
    dzb = np.zeros((m, 2 * m), dtype=complex)
    for j in range(m):
        dz[j, 2 * j] = 1.0
        dz[j, 2 * j + 1] = 1.0j
        dzb[j, 2 * j] = 1.0
        dzb[j, 2 * j + 1] = -1.0j
    return dz, dzb


def hermitian_to_real_metric(H) -> np.ndarray:
    """2m x 2m symmetric matrix of 2 Re(H_jk dz^j (x) dzbar^k)."""
    H = np.asarray(H, dtype=complex)
    m = H.shape[0]
    dz, dzb = _pairings(m)
    T = dz.T @ H @ dzb
    out = T + T.T
    if np.abs(out.imag).max() > 1e-10 * (1.0 + np.abs(out.real).max()):
        raise ValueError("metric matrix not real; input not Hermitian?")
    return out.real


def hermitian_to_real_form(H) -> np.ndarray:
    """2m x 2m antisymmetric matrix of sqrt(-1) H_jk dz^j ^ dzbar^k."""
    H = np.asarray(H, dtype=complex)
    m = H.shape[0]
    dz, dzb = _pairings(m)
    W = 1j * (dz.T @ H @ dzb)
    out = W - W.T
    if np.abs(out.imag).max() > 1e-10 * (1.0 + np.abs(out.real).max()):
        raise ValueError("form matrix not real; input not Hermitian?")
    return out.real


def pfaffian(A: np.ndarray) -> float:
    """Pfaffian of an even antisymmetric matrix (recursive expansion)."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if n % 2:
        return 0.0
    if n == 0:
        return 1.0
    if n == 2:
        return float(A[0, 1])
    acc = 0.0
    sub = list(range(1, n))
    for t, j in enumerate(sub):
        rest = [k for k in sub if k != j]
        minor = A[np.ix_(rest, rest)]
        acc += (-1.0) ** t * A[0, j] * pfaffian(minor)
    return acc
